#pragma once

#include <stdexcept>
#include <string>

namespace ericksen {

/// Out-of-range or inconsistent arguments (n = 0, negative weights, unknown tags, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A user-supplied function returned a non-finite value at a vertex.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, long vertex)
      : std::runtime_error(what), vertex_(vertex) {}
  long vertex() const { return vertex_; }

 private:
  long vertex_;
};

/// Malformed or unsupported mesh / config input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Mesh fails a structural check (zero volume, non-conforming facets).
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Krylov failure: no convergence, breakdown, or non-finite data.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Zero director at a vertex where a tangent frame is required.
class DegenerateDirector : public std::runtime_error {
 public:
  DegenerateDirector(const std::string& what, long vertex)
      : std::runtime_error(what), vertex_(vertex) {}
  long vertex() const { return vertex_; }

 private:
  long vertex_;
};

}  // namespace ericksen
