#include "ericksen/quadrature.hpp"

#include <cmath>
#include <vector>

#include "ericksen/error.hpp"

namespace ericksen {

namespace {

// All compositions of `total` into `parts` nonnegative integers.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    compositions(total - i, parts - 1, cur, out);
    cur.pop_back();
  }
}

template <typename Scalar>
Scalar factorial(int n) {
  Scalar f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

template <typename Scalar>
QuadratureRule<Scalar> grundmann_moeller(int dim, int s) {
  if (dim < 1 || s < 0) throw InvalidParameter("grundmann_moeller: need dim >= 1, s >= 0");
  const int order = 2 * s + 1;
  std::vector<Scalar> w;
  std::vector<std::vector<Scalar>> pts;
  for (int i = 0; i <= s; ++i) {
    const int den = dim + order - 2 * i;
    Scalar weight = (i % 2 ? -1 : 1) * std::pow(Scalar(2), -2 * s) *
                    std::pow(Scalar(den), order) / factorial<Scalar>(i) /
                    factorial<Scalar>(dim + order - i) * factorial<Scalar>(dim);
    std::vector<std::vector<int>> betas;
    std::vector<int> cur;
    compositions(s - i, dim + 1, cur, betas);
    for (const auto& beta : betas) {
      std::vector<Scalar> lam(dim + 1);
      for (int j = 0; j <= dim; ++j) lam[j] = Scalar(2 * beta[j] + 1) / den;
      pts.push_back(std::move(lam));
      w.push_back(weight);
    }
  }
  QuadratureRule<Scalar> rule;
  rule.dim = dim;
  rule.degree = order;
  rule.points.resize(static_cast<Eigen::Index>(pts.size()), dim + 1);
  rule.weights.resize(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t q = 0; q < pts.size(); ++q) {
    for (int j = 0; j <= dim; ++j) rule.points(q, j) = pts[q][j];
    rule.weights[q] = w[q];
  }
  return rule;
}

template <typename Scalar>
QuadratureRule<Scalar> simplex_rule(int dim, int degree) {
  if (dim != 2 && dim != 3) throw InvalidParameter("simplex_rule: dim must be 2 or 3");
  if (degree <= 2) {
    // Symmetric rule with nodes a*e_i + b*(1 - e_i); a = 2/3, b = 1/6 in 2D and
    // a = (5 + 3 sqrt 5) / 20, b = (5 - sqrt 5) / 20 in 3D.
    QuadratureRule<Scalar> rule;
    rule.dim = dim;
    rule.degree = 2;
    const Scalar sqrt5 = std::sqrt(Scalar(5));
    const Scalar a = dim == 2 ? Scalar(2) / 3 : (5 + 3 * sqrt5) / 20;
    const Scalar b = dim == 2 ? Scalar(1) / 6 : (5 - sqrt5) / 20;
    rule.points.setConstant(dim + 1, dim + 1, b);
    rule.points.diagonal().setConstant(a);
    rule.weights.setConstant(dim + 1, Scalar(1) / (dim + 1));
    return rule;
  }
  return grundmann_moeller<Scalar>(dim, degree / 2);
}

template QuadratureRule<double> grundmann_moeller<double>(int, int);
template QuadratureRule<double> simplex_rule<double>(int, int);
template QuadratureRule<long double> grundmann_moeller<long double>(int, int);
template QuadratureRule<long double> simplex_rule<long double>(int, int);

}  // namespace ericksen
