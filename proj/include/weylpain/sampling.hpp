#ifndef WEYLPAIN_SAMPLING_HPP
#define WEYLPAIN_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

// Schwartz-Zippel sample source: integers in [-range, range].
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, std::int64_t range = 1000000) : rng_(seed), range_(range) {}

  Rational integer();
  Rational small_rational(int num_bound, int den_bound);

  // Free parameters drawn as integers; the eliminated one solves the relation
  // exactly, so the result lies on the hyperplane.
  std::vector<Rational> alpha_on(const LinearRelation& rel);
  std::vector<Rational> small_alpha_on(const LinearRelation& rel, int num_bound = 50, int den_bound = 7);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::int64_t range_;
};

}  // namespace weylpain

#endif
