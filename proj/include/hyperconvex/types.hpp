#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hyperconvex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Numerical tolerances shared by every module.
///
/// `orth` bounds orthonormality defects of stored bases, `rank` is the
/// relative singular-value cutoff used for rank decisions, `geom` is the
/// geometric equality tolerance and `sup_width` the default width of
/// certified supremum enclosures.
struct Tolerances {
  double orth = 1e-10;
  double rank = 1e-8;
  double geom = 1e-9;
  double sup_width = 1e-3;

  /// Throws std::invalid_argument unless every field is strictly positive
  /// and `rank` sits above the double-precision floor.
  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its cap. Carries the best iterate seen and a
/// bound on how far it is from optimal.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Vector best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}

  const Vector& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Vector best_;
  double residual_;
};

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": ambient dimensions differ (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace hyperconvex
