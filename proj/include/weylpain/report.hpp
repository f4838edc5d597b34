#ifndef WEYLPAIN_REPORT_HPP
#define WEYLPAIN_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

enum class Mode { Symbolic, Probabilistic };
const char* mode_name(Mode m);

struct Residual {
  std::string component;
  std::optional<Poly> poly;  // symbolic residuals
  std::string text;          // formatted poly or a failing sample
};

// status PASS iff residuals is empty
struct CheckReport {
  std::string check;
  std::string system;
  std::string target;
  Mode mode = Mode::Symbolic;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<Residual> residuals;
  std::string note;
  double elapsed_ms = 0;

  bool pass() const { return residuals.empty(); }
  const char* status() const { return pass() ? "PASS" : "FAIL"; }
  void fail(std::string component, const Poly& r);
  void fail(std::string component, std::string text);
  std::string residual_excerpt(std::size_t limit = 240) const;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace weylpain

#endif
