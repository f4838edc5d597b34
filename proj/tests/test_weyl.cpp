#include <doctest.h>

#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"
#include "weylpain/weyl.hpp"

using namespace weylpain;

namespace {

std::vector<ParamMap> actions(const Catalog& cat) {
  std::vector<ParamMap> out;
  for (const auto& g : cat.names("generator")) out.push_back(cat.get(g).param);
  return out;
}

bool all_pass(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.pass(); });
}

}  // namespace

TEST_CASE("inferred diagrams") {
  auto e6 = infer_diagram(actions(load_catalog("e6")));
  CHECK(e6.edge_text() == "0-2, 0-4, 0-5, 1-2, 3-4, 5-6");
  CHECK(e6 == DynkinDiagram::builtin("e6"));
  CHECK(infer_diagram(actions(load_catalog("e7"))) == DynkinDiagram::builtin("e7"));
  auto e8 = infer_diagram(actions(load_catalog("e8")));
  CHECK(e8 == DynkinDiagram::builtin("e8"));
  CHECK(e8.adjacent(0, 8));
  CHECK(e8.nodes == 9);
  CHECK(e8.to_dot("e8").find("0 -- 8") != std::string::npos);
}

TEST_CASE("built-in diagram shapes") {
  auto e7 = DynkinDiagram::builtin("e7");
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 2}, {2, 1}, {1, 0}, {0, 4}, {4, 5}, {5, 6}, {0, 7}})
    CHECK(e7.adjacent(a, b));
  CHECK(e7.edges.size() == 7);
  auto e8 = DynkinDiagram::builtin("e8");
  CHECK(e8.edges.size() == 8);
  CHECK_THROWS_AS(DynkinDiagram::builtin("d4"), Error);
}

TEST_CASE("malformed actions are rejected") {
  // identity is an involution but does not negate alpha_0
  try {
    infer_diagram({ParamMap::identity(1)});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Structural);
  }
  // s0 shifts alpha_1 but s1 leaves alpha_0 alone
  ParamMap s0 = ParamMap::identity(2), s1 = ParamMap::identity(2);
  s0.A[0][0] = -1;
  s0.A[1][0] = 1;
  s1.A[1][1] = -1;
  try {
    infer_diagram({s0, s1});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconsistent);
  }
  // alpha_0 -> -alpha_0 + alpha_1 squares to something else
  ParamMap bad = ParamMap::identity(2);
  bad.A[0][0] = -1;
  bad.A[0][1] = 1;
  bad.A[1][1] = 2;
  try {
    infer_diagram({bad, s1});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInvolution);
  }
}

TEST_CASE("parameter-level Coxeter relations") {
  for (const auto& name : {"e6", "e7", "e8"}) {
    auto cat = load_catalog(name);
    auto rs = check_coxeter(actions(cat), DynkinDiagram::builtin(name), name);
    std::size_t n = cat.names("generator").size();
    CHECK(rs.size() == n + n * (n - 1) / 2);
    CHECK_MESSAGE(all_pass(rs), name);
  }
  auto e6 = load_catalog("e6");
  for (const auto& r : check_coxeter(actions(e6), DynkinDiagram::builtin("e6"), "e6"))
    if (r.target == "(s1 s3)^2 [param]") CHECK(r.pass());
}

TEST_CASE("a wrong diagram is caught") {
  auto e6 = load_catalog("e6");
  auto d = DynkinDiagram::builtin("e6");
  d.edges.erase({1, 2});
  d.connect(1, 3);
  CHECK_FALSE(all_pass(check_coxeter(actions(e6), d, "e6")));
}

TEST_CASE("birational Coxeter relations for E6") {
  auto cat = load_catalog("e6");
  CoxeterOptions opt;
  opt.level = Level::Birational;
  auto rs = check_coxeter(cat, cat.names("generator"), DynkinDiagram::builtin("e6"), opt);
  CHECK(rs.size() == 28);
  CHECK(all_pass(rs));
  const auto& s1 = cat.get("s1");
  const auto& s2 = cat.get("s2");
  auto w = check_word_identity({&s1, &s2, &s1, &s2, &s1, &s2}, cat.relation(), Level::Birational);
  CHECK(w.pass());
  // (s1 s2)^2 is not the identity since 1 and 2 are adjacent
  CHECK_FALSE(check_word_identity({&s1, &s2, &s1, &s2}, cat.relation(), Level::Birational).pass());
}

TEST_CASE("birational adjacent relations for E7") {
  auto cat = load_catalog("e7");
  CoxeterOptions opt;
  opt.level = Level::Birational;
  opt.adjacent_only = true;
  CHECK(all_pass(check_coxeter(cat, cat.names("generator"), DynkinDiagram::builtin("e7"), opt)));
}

TEST_CASE("automorphisms") {
  auto e6 = load_catalog("e6");
  auto d6 = DynkinDiagram::builtin("e6");
  CHECK(extract_permutation(e6.get("pi2").param) == std::vector<int>{0, 6, 5, 3, 4, 2, 1});
  for (const auto& p : e6.names("automorphism")) CHECK_MESSAGE(check_automorphism(e6.get(p), actions(e6), d6, "e6").pass(), p);
  auto e7 = load_catalog("e7");
  CHECK(extract_permutation(e7.get("pi").param) == std::vector<int>{0, 4, 5, 6, 1, 2, 3, 7});
  CHECK(check_automorphism(e7.get("pi"), actions(e7), DynkinDiagram::builtin("e7"), "e7").pass());
  auto id = BirationalMap::identity(e6.table(), 7);
  CHECK(check_automorphism(id, actions(e6), d6, "e6").pass());
}

TEST_CASE("bad automorphisms") {
  auto e6 = load_catalog("e6");
  auto d6 = DynkinDiagram::builtin("e6");
  // swapping nodes 1 and 3 breaks the star
  auto m = BirationalMap::identity(e6.table(), 7);
  std::swap(m.param.A[1], m.param.A[3]);
  CHECK_FALSE(check_automorphism(m, actions(e6), d6, "e6").pass());
  try {
    extract_permutation(e6.get("s0").param);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPermutation);
  }
}
