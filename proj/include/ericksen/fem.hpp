#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "ericksen/double_well.hpp"
#include "ericksen/error.hpp"
#include "ericksen/mesh.hpp"
#include "ericksen/types.hpp"

namespace ericksen {

/// Nodal interpolant I_h f. `f` takes a vertex coordinate row; if it returns a scalar the
/// result is a ScalarField, otherwise a VectorField with one row per vertex.
template <typename F>
auto nodal_interpolate(const SimplicialMesh& mesh, F&& f) {
  using Point = decltype(mesh.vertex(0));
  using Result = std::invoke_result_t<F&, Point>;
  if constexpr (std::is_arithmetic_v<std::decay_t<Result>>) {
    ScalarField out(mesh.num_vertices());
    for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z) {
      out[z] = f(mesh.vertex(z));
      if (!std::isfinite(out[z]))
        throw EvaluationError("non-finite value at vertex " + std::to_string(z), z);
    }
    return out;
  } else {
    VectorField out;
    for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z) {
      const Eigen::VectorXd v = f(mesh.vertex(z));
      if (z == 0) out.resize(mesh.num_vertices(), v.size());
      if (v.size() != out.cols() || !v.allFinite())
        throw EvaluationError("invalid value at vertex " + std::to_string(z), z);
      out.row(z) = v.transpose();
    }
    return out;
  }
}

/// Throws InvalidParameter unless `s` has one finite entry per vertex.
void check_field(const SimplicialMesh& mesh, const ScalarField& s);
/// Throws InvalidParameter unless `n` is (num_vertices x d) and finite.
void check_field(const SimplicialMesh& mesh, const VectorField& n);

/// Constant gradient of a P1 scalar field on cell k.
Eigen::VectorXd cell_gradient(const SimplicialMesh& mesh, Eigen::Index k, const ScalarField& s);
/// Constant Jacobian (d x d, row c = grad of component c) of a P1 vector field on cell k.
Eigen::MatrixXd cell_jacobian(const SimplicialMesh& mesh, Eigen::Index k, const VectorField& n);

// Assembled operators. Vector-valued forms in the flow are component-diagonal, so each
// is stored once as a scalar operator and applied to every column of a VectorField.

/// (phi_i, phi_j)
CsrMatrix assemble_mass(const SimplicialMesh& mesh);
/// sum_K w_K (grad phi_i, grad phi_j)_K; weights are per cell and must be >= 0.
CsrMatrix assemble_stiffness_weighted(const SimplicialMesh& mesh, const Eigen::VectorXd& weights);
/// Unweighted stiffness (w = 1).
CsrMatrix assemble_stiffness(const SimplicialMesh& mesh);
/// (s^2 grad phi_i, grad phi_j)
CsrMatrix assemble_s2_stiffness(const SimplicialMesh& mesh, const ScalarField& s);
/// (|grad s|^2 phi_i, phi_j)
CsrMatrix assemble_gradsq_mass(const SimplicialMesh& mesh, const ScalarField& s);
/// (|n|^2 grad phi_i, grad phi_j)
CsrMatrix assemble_nsq_stiffness(const SimplicialMesh& mesh, const VectorField& n);
/// (|grad n|_F^2 phi_i, phi_j)
CsrMatrix assemble_gradnsq_mass(const SimplicialMesh& mesh, const VectorField& n);

/// Load vector (f(s_h), phi_i) for a pointwise function of s_h, integrated to degree 4.
Eigen::VectorXd assemble_load(const SimplicialMesh& mesh, const ScalarField& s,
                              const std::function<double(double)>& f);

/// E_1^h = 1/2 int (kappa |n_h (x) grad s_h|^2 + s_h^2 |grad n_h|^2), exact.
double energy_elastic(const SimplicialMesh& mesh, const ScalarField& s, const VectorField& n,
                      double kappa);
/// E_2^h = int psi(s_h), exact (degree-4 quadrature of a quartic).
double energy_potential(const SimplicialMesh& mesh, const ScalarField& s,
                        const DoubleWell<>& dw);
/// || I_h[|n_h|^2 - 1] ||_{L^1}.
double unit_length_error(const SimplicialMesh& mesh, const VectorField& n);

/// (u, v)_{L^2} of two P1 fields given the mass matrix.
double l2_inner(const CsrMatrix& mass, const ScalarField& u, const ScalarField& v);

}  // namespace ericksen
