#include <algorithm>
#include <cctype>
#include <sstream>

#include "weylpain/data_dir.hpp"
#include "weylpain/geometry.hpp"

namespace weylpain {

long intersect(const DivisorClass& a, const DivisorClass& b) {
  std::size_t n = std::min(a.size(), b.size());
  if (n == 0) return 0;
  long s = 2 * a[0] * b[0];
  for (std::size_t i = 1; i < n; ++i) s -= a[i] * b[i];
  return s;
}

SurfaceState SurfaceState::sigma2(const std::string& curve_name) {
  SurfaceState s;
  s.order_.push_back(curve_name);
  s.index_[curve_name] = DivisorClass{1};
  s.K_ = DivisorClass{-2};
  return s;
}

const DivisorClass& SurfaceState::cls(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorCode::UnknownCurve, "unknown curve '" + name + "'");
  return it->second;
}

void SurfaceState::extend() {
  for (auto& [n, c] : index_) c.push_back(0);
  K_.push_back(0);
  for (auto& c : contracted_) c.push_back(0);
}

SurfaceState SurfaceState::blow_up(const std::vector<std::string>& through, std::string name) const {
  for (const auto& c : through) cls(c);
  SurfaceState s = *this;
  s.extend();
  std::size_t e = s.K_.size() - 1;
  for (const auto& c : through) s.index_[c][e] -= 1;
  s.K_[e] += 1;
  if (name.empty()) name = "E" + std::to_string(e);
  if (s.index_.count(name)) throw Error(ErrorCode::Precondition, "curve name '" + name + "' already in use");
  DivisorClass ex(s.K_.size(), 0);
  ex[e] = 1;
  s.index_[name] = ex;
  s.order_.push_back(name);
  return s;
}

SurfaceState SurfaceState::blow_down(const std::string& curve) const {
  const DivisorClass c = cls(curve);
  long sq = intersect(c, c);
  if (sq != -1)
    throw Error(ErrorCode::NotContractible, "cannot blow down " + curve + ": square is " + std::to_string(sq));
  SurfaceState s = *this;
  auto push = [&](DivisorClass& x) {
    long k = intersect(x, c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * c[i];
  };
  s.index_.erase(curve);
  s.order_.erase(std::find(s.order_.begin(), s.order_.end(), curve));
  for (auto& [n, x] : s.index_) push(x);
  push(s.K_);
  s.contracted_.push_back(c);
  return s;
}

DivisorClass SurfaceState::class_of(const std::string& sum) const {
  DivisorClass out(K_.size(), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < sum.size() && std::isspace(static_cast<unsigned char>(sum[i]))) ++i;
  };
  bool first = true;
  for (;;) {
    skip();
    if (i >= sum.size()) break;
    long sign = 1;
    if (sum[i] == '+' || sum[i] == '-') {
      sign = sum[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw SyntaxError(i, "expected '+' or '-'");
    }
    long k = 1;
    if (i < sum.size() && std::isdigit(static_cast<unsigned char>(sum[i]))) {
      std::size_t st = i;
      while (i < sum.size() && std::isdigit(static_cast<unsigned char>(sum[i]))) ++i;
      k = std::stol(sum.substr(st, i - st));
      skip();
      if (i < sum.size() && sum[i] == '*') ++i;
      skip();
    }
    std::size_t st = i;
    while (i < sum.size() && (std::isalnum(static_cast<unsigned char>(sum[i])) || sum[i] == '_')) ++i;
    if (st == i) throw SyntaxError(st, "expected a curve name");
    std::string name = sum.substr(st, i - st);
    const DivisorClass& c = name == "K" ? K_ : cls(name);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += sign * k * c[j];
    first = false;
  }
  if (first) throw SyntaxError(0, "empty divisor sum");
  return out;
}

static std::string class_text(const DivisorClass& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
  return s + "]";
}

CheckReport canonical_check(const SurfaceState& s, const std::string& expected, const std::string& system) {
  Stopwatch sw;
  CheckReport r;
  r.check = "lattice";
  r.system = system;
  r.target = "K = " + expected;
  DivisorClass want = s.class_of(expected);
  if (want != s.canonical()) r.fail("K", "K is " + class_text(s.canonical()) + ", expected " + class_text(want));
  r.elapsed_ms = sw.ms();
  return r;
}

bool SequenceRun::pass() const {
  return std::all_of(expectations.begin(), expectations.end(), [](const Expectation& e) { return e.pass; });
}

SequenceRun run_sequence(const std::string& script) {
  SequenceRun run;
  std::istringstream in(script);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto w = split_ws(line);
    const std::string& cmd = w[0];
    auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::Syntax, "line " + std::to_string(lineno) + ": " + why);
    };
    if (cmd == "start") {
      if (w.size() != 2) bad("start takes a curve name");
      run.state = SurfaceState::sigma2(w[1]);
    } else if (cmd == "blowup") {
      if (w.size() != 2 && !(w.size() == 4 && w[2] == "as")) bad("blowup <curves> [as <name>]");
      std::vector<std::string> through;
      if (w[1] != "-") {
        std::string item;
        std::istringstream cs(w[1]);
        while (std::getline(cs, item, ','))
          if (!item.empty()) through.push_back(item);
      }
      run.state = run.state.blow_up(through, w.size() == 4 ? w[3] : "");
      ++run.blowups;
    } else if (cmd == "blowdown") {
      if (w.size() != 2) bad("blowdown <curve>");
      run.state = run.state.blow_down(w[1]);
      ++run.blowdowns;
    } else if (cmd == "expect") {
      Expectation e;
      e.line = lineno;
      e.text = line.substr(7);
      long got = 0, want = 0;
      if (w.size() == 4 && w[2] == "sq") {
        got = run.state.self_intersection(w[1]);
        want = std::stol(w[3]);
        e.text = "(" + w[1] + ")^2 = " + w[3];
      } else if (w.size() == 5 && w[2] == "dot") {
        got = run.state.dot(w[1], w[3]);
        want = std::stol(w[4]);
        e.text = "(" + w[1] + ", " + w[3] + ") = " + w[4];
      } else {
        bad("expect <c> sq <n> | expect <a> dot <b> <n>");
      }
      e.pass = got == want;
      e.actual = std::to_string(got);
      run.expectations.push_back(e);
    } else if (cmd == "expectK") {
      Expectation e;
      e.line = lineno;
      std::string sum = trim(line.substr(7));
      e.text = "K = " + sum;
      DivisorClass want = run.state.class_of(sum);
      e.pass = want == run.state.canonical();
      e.actual = class_text(run.state.canonical());
      run.expectations.push_back(e);
    } else if (cmd == "expectK2") {
      if (w.size() != 2) bad("expectK2 <n>");
      Expectation e;
      e.line = lineno;
      e.text = "K^2 = " + w[1];
      e.pass = run.state.K2() == std::stol(w[1]);
      e.actual = std::to_string(run.state.K2());
      run.expectations.push_back(e);
    } else {
      bad("unknown directive '" + cmd + "'");
    }
  }
  return run;
}

SequenceRun run_sequence_file(const std::string& system, const std::filesystem::path& dir) {
  return run_sequence(read_file(dir / "sequences" / (system + ".seq")));
}

std::vector<CheckReport> lattice_reports(const std::string& system, const SequenceRun& run) {
  std::vector<CheckReport> out;
  for (const auto& e : run.expectations) {
    CheckReport r;
    r.check = "lattice";
    r.system = system;
    r.target = e.text + " (line " + std::to_string(e.line) + ")";
    if (!e.pass) r.fail("value", "actual " + e.actual);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace weylpain
