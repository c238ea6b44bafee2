#pragma once

#include <Eigen/Core>

namespace ericksen {

/// Quadrature on the reference d-simplex in barycentric form.
///
/// Row q of `points` holds the d+1 barycentric coordinates of node q. Weights are
/// normalized to unit measure, so the integral over a cell K is
/// |K| * sum_q weights[q] * f(points.row(q)).
template <typename Scalar = double>
struct QuadratureRule {
  int dim = 0;
  int degree = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> points;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  Eigen::Index size() const { return weights.size(); }
};

/// Grundmann-Moeller rule of index s on the d-simplex (exact to degree 2s+1).
/// Contains negative weights for s >= 1.
template <typename Scalar = double>
QuadratureRule<Scalar> grundmann_moeller(int dim, int s);

/// Rule exact to at least `degree` on the d-simplex. Degrees <= 2 use the classic
/// positive (d+1)-point rules; higher degrees use Grundmann-Moeller.
template <typename Scalar = double>
QuadratureRule<Scalar> simplex_rule(int dim, int degree);

extern template QuadratureRule<double> grundmann_moeller<double>(int, int);
extern template QuadratureRule<double> simplex_rule<double>(int, int);
extern template QuadratureRule<long double> grundmann_moeller<long double>(int, int);
extern template QuadratureRule<long double> simplex_rule<long double>(int, int);

}  // namespace ericksen
