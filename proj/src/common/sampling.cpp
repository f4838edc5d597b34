#include "weylpain/sampling.hpp"

#include "weylpain/report.hpp"

namespace weylpain {

Rational Sampler::integer() {
  std::uniform_int_distribution<std::int64_t> d(-range_, range_);
  return Rational(static_cast<long>(d(rng_)));
}

Rational Sampler::small_rational(int num_bound, int den_bound) {
  std::uniform_int_distribution<int> n(-num_bound, num_bound), d(1, den_bound);
  Rational r(n(rng_), d(rng_));
  r.canonicalize();
  return r;
}

static std::vector<Rational> solve_last(const LinearRelation& rel, std::vector<Rational> v) {
  int e = rel.eliminated();
  Rational s = rel.constant;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (i != e) s -= rel.coeff[i] * v[i];
  v[e] = s / rel.coeff[e];
  return v;
}

std::vector<Rational> Sampler::alpha_on(const LinearRelation& rel) {
  std::vector<Rational> v(rel.coeff.size());
  for (auto& x : v) x = integer();
  return solve_last(rel, std::move(v));
}

std::vector<Rational> Sampler::small_alpha_on(const LinearRelation& rel, int num_bound, int den_bound) {
  std::vector<Rational> v(rel.coeff.size());
  for (auto& x : v) x = small_rational(num_bound, den_bound);
  return solve_last(rel, std::move(v));
}

const char* mode_name(Mode m) { return m == Mode::Symbolic ? "symbolic" : "probabilistic"; }

void CheckReport::fail(std::string component, const Poly& r) {
  residuals.push_back(Residual{std::move(component), r, format(r)});
}

void CheckReport::fail(std::string component, std::string text) {
  residuals.push_back(Residual{std::move(component), std::nullopt, std::move(text)});
}

std::string CheckReport::residual_excerpt(std::size_t limit) const {
  std::string out;
  for (const auto& r : residuals) {
    if (!out.empty()) out += "; ";
    out += r.component + ": " + r.text;
    if (out.size() > limit) break;
  }
  if (out.size() > limit) out = out.substr(0, limit) + "...";
  return out;
}

}  // namespace weylpain
