#pragma once

#include <stdexcept>
#include <string>

namespace sphgof {

// Broad failure categories, used by the CLI to pick an exit code:
// data problems (bad input files, invalid arguments) vs numerical
// failures (non-convergence, degenerate configurations).
enum class ErrorKind { data, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// --- data errors -----------------------------------------------------------

struct ZeroVectorError : Error {
  explicit ZeroVectorError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct OutOfRangeError : Error {
  explicit OutOfRangeError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct UnsupportedDimensionError : Error {
  explicit UnsupportedDimensionError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct InvalidSpecError : Error {
  explicit InvalidSpecError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct InvalidConfigError : Error {
  explicit InvalidConfigError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct EmptyAfterFilterError : Error {
  explicit EmptyAfterFilterError(const std::string& w) : Error(ErrorKind::data, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::data, w) {}
};

// --- numerical errors ------------------------------------------------------

struct DegenerateMeanError : Error {
  explicit DegenerateMeanError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct RankDeficientError : Error {
  explicit RankDeficientError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct FitFailedError : Error {
  explicit FitFailedError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

}  // namespace sphgof
