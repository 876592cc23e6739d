#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tridet {

// Base of every exception thrown by the library. The C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public Error {
public:
  using Error::Error;
};

// A statistic or coefficient is undefined for the given graph
// (no nodes, no wedges, zero mean degree, ...).
class UndefinedError : public Error {
public:
  using Error::Error;
};

// Dense path requested above the configured node cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double last_estimate,
                   std::vector<double> last_iterate)
      : Error(what), last_estimate_(last_estimate),
        last_iterate_(std::move(last_iterate)) {}
  double last_estimate() const noexcept { return last_estimate_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
  double last_estimate_;
  std::vector<double> last_iterate_;
};

class GenerationError : public Error {
public:
  using Error::Error;
};

}  // namespace tridet
