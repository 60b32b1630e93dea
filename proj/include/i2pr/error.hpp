#ifndef I2PR_ERROR_HPP_
#define I2PR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace i2pr {

// Base of every error thrown by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation needs more nodes (or edges) than the graph has.
class DegenerateGraphError : public Error {
 public:
  using Error::Error;
};

class UnknownNodeError : public Error {
 public:
  explicit UnknownNodeError(const std::string& label)
      : Error("unknown node: '" + label + "'"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

// No ordered pair of distinct nodes is connected by a directed path.
class NoPathsError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input file (CSV, JSON, mapping).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Generator spec that cannot be realized, or resampling gave up.
class InfeasibleSpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace i2pr

#endif  // I2PR_ERROR_HPP_
