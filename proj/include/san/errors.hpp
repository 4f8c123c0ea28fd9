#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace san {

// Malformed input files. Carries the file and 1-based line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// Violated preconditions: unknown nodes, mismatched node universes,
// out-of-range hyperparameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// select_core left no nodes.
class EmptyCoreError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative numerical routine failed to converge.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace san
