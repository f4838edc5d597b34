#ifndef WEYLPAIN_ERROR_HPP
#define WEYLPAIN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weylpain {

enum class ErrorCode {
  Structural,
  Syntax,
  UnknownIdentifier,
  Pole,
  DegreeMismatch,
  UnsupportedAnsatz,
  Unsupported,
  Inconsistent,
  NonInvolution,
  NotAPermutation,
  NotContractible,
  UnknownCurve,
  Escape,
  MaxSteps,
  Precondition,
  Io,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures remember where they happened.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Syntax, "at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class DegreeMismatch : public Error {
 public:
  DegreeMismatch(int expected, int actual)
      : Error(ErrorCode::DegreeMismatch, "declared degree " + std::to_string(expected) +
                                             ", actual " + std::to_string(actual)),
        actual_(actual) {}

  int actual() const { return actual_; }

 private:
  int actual_;
};

}  // namespace weylpain

#endif
