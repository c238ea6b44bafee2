#pragma once

#include <functional>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "ericksen/types.hpp"

namespace ericksen {

/// A boundary facet (d vertex indices) carrying an integer tag.
struct TaggedFacet {
  std::vector<int> vertices;
  int tag = 0;
};

/// Conforming simplicial mesh of a polytopal domain in 2D or 3D.
///
/// The constructor normalizes cell orientation, checks conformity, extracts the
/// topological boundary and caches the per-cell geometry used by P1 assembly.
/// Boundary facets not matched by a tagged facet get tag 0. Objects are
/// immutable after construction.
class SimplicialMesh {
 public:
  /// Maps the coordinates of a boundary facet (one vertex per row) to its tag.
  using FacetTagger = std::function<int(const Eigen::MatrixXd&)>;

  SimplicialMesh(Eigen::MatrixXd vertices, CellArray cells,
                 const std::vector<TaggedFacet>& tagged_facets = {});
  SimplicialMesh(Eigen::MatrixXd vertices, CellArray cells, const FacetTagger& tagger);

  int dim() const { return dim_; }
  Eigen::Index num_vertices() const { return vertices_.rows(); }
  Eigen::Index num_cells() const { return cells_.rows(); }

  const Eigen::MatrixXd& vertices() const { return vertices_; }
  const CellArray& cells() const { return cells_; }
  auto vertex(Eigen::Index z) const { return vertices_.row(z); }
  auto cell(Eigen::Index k) const { return cells_.row(k); }

  /// Boundary facets, one per row (d vertex indices), and their tags.
  const CellArray& boundary_facets() const { return facets_; }
  const Eigen::VectorXi& boundary_tags() const { return facet_tags_; }
  std::set<int> tags_present() const;

  double cell_volume(Eigen::Index k) const { return volume_[k]; }
  const Eigen::VectorXd& cell_volumes() const { return volume_; }

  /// Gradients of the d+1 barycentric functions of cell k, one per row.
  auto cell_grads(Eigen::Index k) const {
    return grads_.middleRows((dim_ + 1) * k, dim_ + 1);
  }

  /// Cell diameter (longest edge).
  double h_cell(Eigen::Index k) const { return h_cell_[k]; }
  const Eigen::VectorXd& h_cells() const { return h_cell_; }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }
  /// Diameter of the vertex patch (union of cells touching z).
  double h_vertex(Eigen::Index z) const { return h_vertex_[z]; }

  double volume() const { return volume_.sum(); }

 private:
  void orient_and_measure();
  void extract_boundary(const std::vector<TaggedFacet>& tagged, const FacetTagger& tagger);
  void patch_diameters();

  int dim_;
  Eigen::MatrixXd vertices_;
  CellArray cells_;
  CellArray facets_;
  Eigen::VectorXi facet_tags_;
  Eigen::VectorXd volume_;
  Eigen::MatrixXd grads_;
  Eigen::VectorXd h_cell_;
  Eigen::VectorXd h_vertex_;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
};

/// (0,1)^2 as n x n squares, each cut along the (i,j)-(i+1,j+1) diagonal.
/// All boundary facets carry tag 1.
SimplicialMesh generate_unit_square(int n);

/// (0,1)^3 as n^3 subcubes, each cut into the 6 Kuhn tetrahedra sharing the main
/// diagonal. Face tags: 1 = {z=0}, 2 = {z=1}, 3 = {x=0}, 4 = {x=1}, 5 = {y=0}, 6 = {y=1}.
SimplicialMesh generate_unit_cube(int n);

/// Cylinder of radius 0.5 about the axis (0.5, 0.5, z), 0 < z < 1.
///
/// Polar disk triangulation (ring k carries k * n_theta vertices) extruded into n_z
/// prism layers, each prism cut into 3 tetrahedra by the global-index diagonal rule.
/// Tags: 1 = lateral surface, 2 = bottom, 3 = top.
SimplicialMesh generate_cylinder(int n_r, int n_theta, int n_z);

/// Worst aspect ratio max_K h_K / inradius_K.
double shape_regularity(const SimplicialMesh& mesh);

/// Sorted indices of the vertices lying on a boundary facet whose tag is in `tags`.
/// Throws InvalidParameter for an empty set or a tag that no facet carries.
std::vector<int> boundary_vertices(const SimplicialMesh& mesh, const std::set<int>& tags);

}  // namespace ericksen
