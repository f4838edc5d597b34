#include <set>

#include "weylpain/data_dir.hpp"
#include "weylpain/geometry.hpp"
#include "weylpain/sampling.hpp"
#include "weylpain/univariate.hpp"

namespace weylpain {

AccessibleSpec load_accessible(const std::string& system, const std::filesystem::path& dir) {
  AccessibleSpec spec;
  for (const auto& line : content_lines(read_file(dir / "accessible" / (system + ".txt")))) {
    auto w = split_ws(line);
    if (w[0] == "partial") {
      if (w.size() != 2) throw Error(ErrorCode::Io, "partial takes one chart name");
      spec.partial.push_back(w[1]);
      continue;
    }
    if (w.size() < 3) throw Error(ErrorCode::Io, "accessible point line needs level, chart and location");
    AccessiblePoint pt;
    pt.level = std::stoi(w[0]);
    pt.chart = w[1];
    std::size_t first = 2;
    if (w[2].rfind("holo=", 0) == 0) {
      pt.holo = w[2].substr(5);
      first = 3;
    }
    for (std::size_t i = first; i < w.size(); ++i) pt.expr += (i > first ? " " : "") + w[i];
    if (pt.expr.empty()) throw Error(ErrorCode::Io, "accessible point without a location");
    spec.points.push_back(std::move(pt));
  }
  return spec;
}

BirationalMap boundary_chart(const std::string& name, const VarTablePtr& table, int alpha_count) {
  // Hirzebruch gluing: z2 = (q, 1/p), z3 = (1/q, -1/((qp+a0)q)); the level-1
  // charts are u = (z - nu)/w, v = w over the points nu = 0, 1, infinity.
  const char* text = nullptr;
  if (name == "z2")
    text = "kind boundary\nQ.num q\nP.num 1\nP.den p\ninverse.Q.num q\ninverse.P.num 1\ninverse.P.den p\n";
  else if (name == "z3")
    text =
        "kind boundary\nQ.num 1\nQ.den q\nP.num -1\nP.den (q*p + a0)*q\n"
        "inverse.Q.num 1\ninverse.Q.den q\ninverse.P.num -(q + a0*p)*q\ninverse.P.den p\n";
  else if (name == "u0")
    text = "kind boundary\nQ.num q*p\nP.num 1\nP.den p\ninverse.Q.num q*p\ninverse.P.num 1\ninverse.P.den p\n";
  else if (name == "u1")
    text =
        "kind boundary\nQ.num (q - 1)*p\nP.num 1\nP.den p\n"
        "inverse.Q.num 1 + q*p\ninverse.P.num 1\ninverse.P.den p\n";
  else if (name == "uinf")
    text =
        "kind boundary\nQ.num -(q*p + a0)\nP.num -1\nP.den (q*p + a0)*q\n"
        "inverse.Q.num 1\ninverse.Q.den q*p\ninverse.P.num -(q + a0)*q*p\n";
  else
    throw Error(ErrorCode::Precondition, "unknown boundary chart '" + name + "'");
  return parse_map(name, text, table, alpha_count);
}

std::vector<Poly> boundary_numerators(const HamiltonianSystem& sys, const BirationalMap& chart) {
  PulledField pf = pullback_field(sys, chart);
  const RationalFunction* comps[2] = {&pf.dX, &pf.dY};
  int e[2];
  for (int i = 0; i < 2; ++i) {
    const Poly& den = comps[i]->den();
    if (!den.is_monomial())
      throw Error(ErrorCode::Unsupported, "boundary field of " + chart.name + " has a non-monomial denominator");
    for (std::size_t v = 0; v < sys.table->size(); ++v)
      if (v != VarTable::p && den.leading().mono.e[v])
        throw Error(ErrorCode::Unsupported, "boundary field of " + chart.name + " has a pole off the boundary");
    e[i] = den.leading().mono.e[VarTable::p];
  }
  int m = std::max(e[0], e[1]);
  std::vector<Poly> out;
  for (int i = 0; i < 2; ++i) {
    // Y^m times the component, restricted to Y = 0
    if (e[i] < m) {
      out.push_back(Poly(sys.table));
      continue;
    }
    out.push_back(coefficient_of(comps[i]->num(), VarTable::p, 0) * (1 / comps[i]->den().leading().coef));
  }
  return out;
}

CheckReport verify_accessible_points(const HamiltonianSystem& sys, int level, const AccessibleSpec& spec,
                                     std::uint64_t seed, int samples) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "accessible";
  rep.system = sys.name;
  rep.target = "level " + std::to_string(level);
  rep.seed = seed;
  rep.samples = samples;
  const auto& vt = sys.table;
  std::map<std::string, std::vector<const AccessiblePoint*>> by_chart;
  int count = 0;
  for (const auto& p : spec.points)
    if (p.level == level) {
      by_chart[p.chart].push_back(&p);
      ++count;
    }
  if (count == 0) rep.fail("points", "no points listed at this level");
  Sampler smp(seed);
  for (const auto& [chart, pts] : by_chart) {
    std::vector<Poly> nums;
    try {
      nums = boundary_numerators(sys, boundary_chart(chart, vt, sys.alpha_count));
    } catch (const Error& e) {
      rep.fail(chart, e.what());
      continue;
    }
    std::vector<Poly> live;
    for (auto& n : nums)
      if (!n.is_zero()) live.push_back(sys.reduce(n));
    if (live.empty()) {
      rep.fail(chart, "the boundary line is singular along its whole length");
      continue;
    }
    for (const auto* pt : pts) {
      RationalFunction loc(parse_poly(pt->expr, vt));
      for (std::size_t i = 0; i < live.size(); ++i) {
        Poly r = sys.reduce(substitute(live[i], Bindings{{VarTable::q, loc}}).num());
        if (!r.is_zero()) rep.fail(chart + " at " + pt->expr, r);
      }
    }
    if (std::find(spec.partial.begin(), spec.partial.end(), chart) != spec.partial.end()) continue;
    // no further common zeros on the boundary line for random parameters
    for (int k = 0; k < samples; ++k) {
      auto alpha = smp.small_alpha_on(sys.relation);
      Point at(vt->size());
      for (int i = 0; i < sys.alpha_count; ++i) at[vt->alpha(i)] = alpha[i];
      UPoly g;
      for (const auto& n : live) g = gcd(g, UPoly::from_poly(partial_eval(n, at), VarTable::q));
      for (const auto* pt : pts) strip_root(g, eval_at(parse_poly(pt->expr, vt), at));
      if (g.degree() > 0) {
        std::string c;
        for (std::size_t i = 0; i < g.coef().size(); ++i)
          c += (i ? " " : "") + format_rational(g.coef()[i]);
        rep.fail(chart, "sample " + std::to_string(k) + ": unlisted common zeros, cofactor coefficients [" + c + "]");
        break;
      }
    }
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport verify_chart_composition(const HamiltonianSystem& sys, const Catalog& cat, const AccessiblePoint& pt,
                                     const std::string& chart_override) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "charts";
  rep.system = sys.name;
  rep.target = pt.holo;
  const auto& vt = sys.table;
  std::string chart = chart_override.empty() ? pt.chart : chart_override;
  if (!chart_override.empty()) rep.note = "using " + chart;
  BirationalMap b = boundary_chart(chart, vt, sys.alpha_count);
  RationalFunction c(parse_poly(pt.expr, vt));
  // (W, V) = ((u - c)/v, v); the holomorphy chart is (-W, V)
  RationalFunction X = -((b.Q - c) / b.P), Y = b.P;
  const BirationalMap& r = cat.get(pt.holo);
  auto cmp = [&](const char* name, const RationalFunction& a, const RationalFunction& z) {
    Poly d = sys.reduce(a.num() * z.den() - z.num() * a.den());
    if (!d.is_zero()) rep.fail(name, d);
  };
  cmp("x", X, r.Q);
  cmp("y", Y, r.P);
  rep.elapsed_ms = sw.ms();
  return rep;
}

}  // namespace weylpain
