#pragma once

#include <functional>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "ericksen/double_well.hpp"
#include "ericksen/mesh.hpp"
#include "ericksen/types.hpp"

namespace ericksen {

/// Strong anchoring data on Gamma_D: s = g and u = r = g q with |q| = 1.
struct DirichletData {
  /// Boundary tags forming Gamma_D; empty means the whole boundary.
  std::set<int> tags;
  std::function<double(const Eigen::VectorXd& x)> g;
  /// Unit director at x. `tag` is the smallest Dirichlet tag among the facets at x.
  std::function<Eigen::VectorXd(const Eigen::VectorXd& x, int tag)> q;

  Eigen::VectorXd r(const Eigen::VectorXd& x, int tag) const { return g(x) * q(x, tag); }
};

/// Nodal Dirichlet data g_h, q_h = r_h / g_h on a given mesh.
struct DirichletNodes {
  std::vector<int> vertices;  ///< constrained vertices, ascending
  std::vector<int> free;      ///< complement of `vertices`, ascending
  ScalarField g;              ///< g_h; zero away from Gamma_D
  VectorField q;              ///< q_h; zero away from Gamma_D

  bool empty() const { return vertices.empty(); }
  /// Dirichlet-free data for problems without Gamma_D.
  static DirichletNodes none(const SimplicialMesh& mesh);
};

/// Evaluates the data at the Gamma_D vertices. Throws InvalidParameter if g(z) = 0 or
/// |q(z)| deviates from 1 by more than 1e-12.
DirichletNodes discretize(const DirichletData& data, const SimplicialMesh& mesh);

/// Discrete state (s_h, n_h); u_h = I_h[s_h n_h] is derived.
struct EricksenState {
  ScalarField s;
  VectorField n;

  VectorField u() const { return n.array().colwise() * s.array(); }
};

/// n(z) = (z - center) / |z - center|; e_1 at a vertex coinciding with the center.
VectorField point_defect_field(const SimplicialMesh& mesh, const Eigen::VectorXd& center);

/// Outer-box anchoring for Saturn-ring runs: (sin(pi z3), 0, -cos(pi z3)), z3 clamped
/// to [0, 1]. Equals -e_3 at z3 = 0, e_1 at z3 = 1/2 and e_3 at z3 = 1.
Eigen::Vector3d saturn_ring_bc(double z3);

struct AdmissibilityReport {
  double unit_length_error = 0.0;
  double eps = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  double n_min = 0.0;  ///< min_z |n(z)|
  double n_max = 0.0;  ///< max_z |n(z)|
  bool unit_length_ok = false;  ///< unit_length_error <= eps
  bool s_bounds_ok = false;     ///< -1/(d-1) < s(z) < 1 at every vertex
  bool structural_ok = false;   ///< |n(z)| >= 1 - 1e-10 at every vertex

  bool passes() const { return unit_length_ok && s_bounds_ok && structural_ok; }
};

/// Membership test for the discrete admissible class. Reporting only; never throws on a
/// failing state.
AdmissibilityReport check_admissibility(const SimplicialMesh& mesh, const EricksenState& state,
                                        double eps);

}  // namespace ericksen
