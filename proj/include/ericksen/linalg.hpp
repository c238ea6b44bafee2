#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ericksen/error.hpp"
#include "ericksen/types.hpp"

namespace ericksen {

struct CgOptions {
  /// Relative tolerance on the Jacobi-preconditioned residual.
  double tol = 1e-10;
  /// 0 means 10 * system size.
  int maxit = 0;
};

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  /// Final relative preconditioned residual.
  double residual = 0.0;
  /// phi(x_k) = 1/2 x_k^T A x_k - b^T x_k after each iteration. Equals
  /// 1/2 |x_k - x|_A^2 - 1/2 |x|_A^2, so it is non-increasing.
  std::vector<double> energy;
};

/// Jacobi-preconditioned conjugate gradients for an SPD operator given as a callable
/// `apply(x, y)` computing y = A x, with `diagonal` the diagonal of A.
///
/// Stops when sqrt(r^T D^-1 r) <= tol * sqrt(b^T D^-1 b). Throws SolverError on
/// non-convergence, non-positive curvature (operator not SPD on the iterates) or
/// non-finite data.
template <typename Apply>
CgResult cg_solve(Apply&& apply, const Eigen::VectorXd& diagonal, const Eigen::VectorXd& b,
                  const CgOptions& opts = {}) {
  const Eigen::Index n = b.size();
  if (diagonal.size() != n) throw InvalidParameter("cg_solve: diagonal size mismatch");
  if (!b.allFinite() || !diagonal.allFinite())
    throw SolverError("cg_solve: non-finite right-hand side or diagonal", NAN, 0);
  if ((diagonal.array() <= 0).any())
    throw SolverError("cg_solve: non-positive diagonal entry, operator is not SPD", NAN, 0);

  CgResult out;
  out.x = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd inv_diag = diagonal.cwiseInverse();
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  double rz = r.dot(z);
  const double bnorm = std::sqrt(rz);
  if (bnorm == 0.0) return out;

  const int maxit = opts.maxit > 0 ? opts.maxit : static_cast<int>(10 * std::max<Eigen::Index>(n, 1));
  Eigen::VectorXd p = z;
  Eigen::VectorXd q(n);
  double phi = 0.0;
  for (int it = 1; it <= maxit; ++it) {
    apply(p, q);
    const double curvature = p.dot(q);
    if (!std::isfinite(curvature))
      throw SolverError("cg_solve: non-finite operator application", std::sqrt(rz) / bnorm, it);
    if (curvature <= 0.0)
      throw SolverError("cg_solve: non-positive curvature, operator is singular or indefinite",
                        std::sqrt(rz) / bnorm, it);
    const double alpha = rz / curvature;
    phi -= 0.5 * alpha * rz;
    out.energy.push_back(phi);
    out.x.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    out.iterations = it;
    out.residual = std::sqrt(std::max(rz_next, 0.0)) / bnorm;
    if (out.residual <= opts.tol) return out;
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw SolverError("cg_solve: no convergence after " + std::to_string(maxit) +
                        " iterations (relative residual " + std::to_string(out.residual) + ")",
                    out.residual, maxit);
}

/// CG on an assembled SPD matrix.
CgResult cg_solve(const CsrMatrix& a, const Eigen::VectorXd& b, const CgOptions& opts = {});

/// Orthonormal frames of the nodal tangent spaces n(z)^perp at the free vertices.
struct TangentBasis {
  int dim = 0;
  /// Vertices carrying a frame, ascending. All other vertices are constrained (t = 0).
  std::vector<int> free_vertices;
  /// Frame of free vertex i occupies rows [d*i, d*i + d), d-1 columns.
  Eigen::MatrixXd frames;

  auto frame(std::size_t i) const { return frames.middleRows(dim * static_cast<Eigen::Index>(i), dim); }
  Eigen::Index reduced_size() const {
    return static_cast<Eigen::Index>(free_vertices.size()) * (dim - 1);
  }

  /// t = Z y as a full VectorField with `num_vertices` rows (zero at constrained vertices).
  VectorField lift(const Eigen::VectorXd& y, Eigen::Index num_vertices) const;
  /// y = Z^T t.
  Eigen::VectorXd project(const VectorField& t) const;
};

/// Tangent frames for `n` at `free_vertices`. The first column is the coordinate axis
/// least aligned with n(z) (lowest index on ties) orthogonalized against n(z); in 3D the
/// second column is n(z)/|n(z)| x first. Throws DegenerateDirector if n(z) = 0.
TangentBasis build_tangent_basis(const VectorField& n, const std::vector<int>& free_vertices);

struct ReducedSolveResult {
  VectorField t;
  int iterations = 0;
  double residual = 0.0;
};

/// Solves Z^T (I_d (x) A) Z y = Z^T rhs by CG and returns t = Z y, i.e. the Galerkin
/// solution of the componentwise operator `a_scalar` over the nodal tangent space.
ReducedSolveResult reduced_solve(const CsrMatrix& a_scalar, const TangentBasis& basis,
                                 const VectorField& rhs, const CgOptions& opts = {});

}  // namespace ericksen
