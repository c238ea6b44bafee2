#include "ericksen/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ericksen/error.hpp"
#include "ericksen/fem.hpp"

namespace ericksen {

DirichletNodes DirichletNodes::none(const SimplicialMesh& mesh) {
  DirichletNodes nodes;
  nodes.free.resize(static_cast<std::size_t>(mesh.num_vertices()));
  for (std::size_t z = 0; z < nodes.free.size(); ++z) nodes.free[z] = static_cast<int>(z);
  nodes.g = ScalarField::Zero(mesh.num_vertices());
  nodes.q = VectorField::Zero(mesh.num_vertices(), mesh.dim());
  return nodes;
}

DirichletNodes discretize(const DirichletData& data, const SimplicialMesh& mesh) {
  if (!data.g || !data.q) throw InvalidParameter("Dirichlet data needs both g and q");
  const std::set<int> tags = data.tags.empty() ? mesh.tags_present() : data.tags;
  const std::vector<int> verts = boundary_vertices(mesh, tags);

  // Smallest Dirichlet tag touching each vertex.
  std::vector<int> vertex_tag(static_cast<std::size_t>(mesh.num_vertices()),
                              std::numeric_limits<int>::max());
  const auto& facets = mesh.boundary_facets();
  for (Eigen::Index b = 0; b < facets.rows(); ++b) {
    const int tag = mesh.boundary_tags()[b];
    if (!tags.count(tag)) continue;
    for (Eigen::Index m = 0; m < facets.cols(); ++m)
      vertex_tag[facets(b, m)] = std::min(vertex_tag[facets(b, m)], tag);
  }

  DirichletNodes nodes;
  nodes.vertices = verts;
  nodes.g = ScalarField::Zero(mesh.num_vertices());
  nodes.q = VectorField::Zero(mesh.num_vertices(), mesh.dim());
  std::vector<char> constrained(static_cast<std::size_t>(mesh.num_vertices()), 0);
  for (int z : verts) {
    const Eigen::VectorXd x = mesh.vertex(z).transpose();
    const double g = data.g(x);
    const Eigen::VectorXd q = data.q(x, vertex_tag[z]);
    if (!std::isfinite(g) || g == 0.0)
      throw InvalidParameter("Dirichlet data: g must be finite and nonzero (vertex " +
                             std::to_string(z) + ")");
    if (q.size() != mesh.dim() || !q.allFinite() || std::abs(q.norm() - 1.0) > 1e-12)
      throw InvalidParameter("Dirichlet data: q must be a unit vector (vertex " +
                             std::to_string(z) + ")");
    nodes.g[z] = g;
    nodes.q.row(z) = q.transpose();
    constrained[z] = 1;
  }
  for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z)
    if (!constrained[z]) nodes.free.push_back(static_cast<int>(z));
  return nodes;
}

VectorField point_defect_field(const SimplicialMesh& mesh, const Eigen::VectorXd& center) {
  if (center.size() != mesh.dim())
    throw InvalidParameter("point_defect_field: center dimension mismatch");
  VectorField n(mesh.num_vertices(), mesh.dim());
  for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z) {
    const Eigen::VectorXd r = mesh.vertex(z).transpose() - center;
    const double len = r.norm();
    if (len > 0.0)
      n.row(z) = (r / len).transpose();
    else
      n.row(z) = Eigen::VectorXd::Unit(mesh.dim(), 0).transpose();
  }
  return n;
}

Eigen::Vector3d saturn_ring_bc(double z3) {
  const double t = std::numbers::pi * std::clamp(z3, 0.0, 1.0);
  return {std::sin(t), 0.0, -std::cos(t)};
}

AdmissibilityReport check_admissibility(const SimplicialMesh& mesh, const EricksenState& state,
                                        double eps) {
  AdmissibilityReport rep;
  rep.eps = eps;
  rep.unit_length_error = unit_length_error(mesh, state.n);
  rep.s_min = state.s.minCoeff();
  rep.s_max = state.s.maxCoeff();
  const Eigen::VectorXd norms = state.n.rowwise().norm();
  rep.n_min = norms.minCoeff();
  rep.n_max = norms.maxCoeff();
  rep.unit_length_ok = rep.unit_length_error <= eps;
  rep.s_bounds_ok = rep.s_min > -1.0 / (mesh.dim() - 1) && rep.s_max < 1.0;
  rep.structural_ok = rep.n_min >= 1.0 - 1e-10;
  return rep;
}

}  // namespace ericksen
