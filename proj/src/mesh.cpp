#include "ericksen/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "ericksen/error.hpp"

namespace ericksen {

namespace {

using FacetKey = std::array<int, 3>;

FacetKey make_key(const int* v, int count) {
  FacetKey key{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
               std::numeric_limits<int>::max()};
  std::copy(v, v + count, key.begin());
  std::sort(key.begin(), key.begin() + count);
  return key;
}

// Facet i of a simplex is the one opposite local vertex i.
void local_facet(const int* cell, int dim, int opposite, int* out) {
  int m = 0;
  for (int a = 0; a <= dim; ++a)
    if (a != opposite) out[m++] = cell[a];
}

double factorial(int d) { return d == 2 ? 2.0 : 6.0; }

}  // namespace

SimplicialMesh::SimplicialMesh(Eigen::MatrixXd vertices, CellArray cells,
                               const std::vector<TaggedFacet>& tagged_facets)
    : dim_(static_cast<int>(vertices.cols())),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)) {
  orient_and_measure();
  extract_boundary(tagged_facets, nullptr);
  patch_diameters();
}

SimplicialMesh::SimplicialMesh(Eigen::MatrixXd vertices, CellArray cells,
                               const FacetTagger& tagger)
    : dim_(static_cast<int>(vertices.cols())),
      vertices_(std::move(vertices)),
      cells_(std::move(cells)) {
  orient_and_measure();
  extract_boundary({}, tagger);
  patch_diameters();
}

void SimplicialMesh::orient_and_measure() {
  if (dim_ != 2 && dim_ != 3)
    throw InvalidParameter("mesh dimension must be 2 or 3, got " + std::to_string(dim_));
  if (cells_.cols() != dim_ + 1)
    throw InvalidParameter("cells must have d+1 vertices");
  if (cells_.rows() == 0) throw InvalidParameter("mesh has no cells");
  const Eigen::Index nv = vertices_.rows();
  if (!vertices_.allFinite()) throw MeshError("non-finite vertex coordinates");

  const Eigen::Index nc = cells_.rows();
  volume_.resize(nc);
  grads_.resize((dim_ + 1) * nc, dim_);
  h_cell_.resize(nc);

  for (Eigen::Index k = 0; k < nc; ++k) {
    for (int a = 0; a <= dim_; ++a)
      if (cells_(k, a) < 0 || cells_(k, a) >= nv)
        throw MeshError("cell " + std::to_string(k) + " references a missing vertex");

    Eigen::MatrixXd edges(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
      edges.col(a) = (vertices_.row(cells_(k, a + 1)) - vertices_.row(cells_(k, 0))).transpose();
    double det = edges.determinant();
    if (det < 0) {
      std::swap(cells_(k, 0), cells_(k, 1));
      for (int a = 0; a < dim_; ++a)
        edges.col(a) = (vertices_.row(cells_(k, a + 1)) - vertices_.row(cells_(k, 0))).transpose();
      det = -det;
    }

    double diam = 0.0;
    for (int a = 0; a <= dim_; ++a)
      for (int b = a + 1; b <= dim_; ++b)
        diam = std::max(diam, (vertices_.row(cells_(k, a)) - vertices_.row(cells_(k, b))).norm());
    if (!(det > 1e-14 * std::pow(diam, dim_)))
      throw MeshError("cell " + std::to_string(k) + " has zero volume");

    volume_[k] = det / factorial(dim_);
    h_cell_[k] = diam;

    // lambda_a = e_a^T edges^{-1} (x - x_0) for a >= 1; lambda_0 = 1 - sum.
    const Eigen::MatrixXd inv = edges.inverse();
    auto g = grads_.middleRows((dim_ + 1) * k, dim_ + 1);
    g.bottomRows(dim_) = inv;
    g.row(0) = -inv.colwise().sum();
  }
  h_min_ = h_cell_.minCoeff();
  h_max_ = h_cell_.maxCoeff();
}

void SimplicialMesh::extract_boundary(const std::vector<TaggedFacet>& tagged,
                                      const FacetTagger& tagger) {
  std::vector<std::pair<FacetKey, Eigen::Index>> all;
  all.reserve(cells_.rows() * (dim_ + 1));
  std::vector<std::array<int, 3>> ordered;  // facet vertices in cell order
  int local[3];
  for (Eigen::Index k = 0; k < cells_.rows(); ++k) {
    for (int a = 0; a <= dim_; ++a) {
      local_facet(cells_.row(k).data(), dim_, a, local);
      all.emplace_back(make_key(local, dim_), k * (dim_ + 1) + a);
    }
  }
  std::sort(all.begin(), all.end());

  std::vector<Eigen::Index> boundary;  // encoded (cell, local facet)
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const std::size_t count = j - i;
    if (count > 2)
      throw MeshError("non-conforming mesh: facet shared by " + std::to_string(count) +
                      " cells");
    if (count == 1) boundary.push_back(all[i].second);
    i = j;
  }
  std::sort(boundary.begin(), boundary.end());

  std::map<FacetKey, int> tag_of;
  for (const auto& f : tagged) {
    if (static_cast<int>(f.vertices.size()) != dim_)
      throw MeshError("tagged facet must have d vertices");
    tag_of[make_key(f.vertices.data(), dim_)] = f.tag;
  }

  facets_.resize(static_cast<Eigen::Index>(boundary.size()), dim_);
  facet_tags_ = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(boundary.size()));
  std::size_t matched = 0;
  Eigen::MatrixXd coords(dim_, dim_);
  for (std::size_t b = 0; b < boundary.size(); ++b) {
    const Eigen::Index k = boundary[b] / (dim_ + 1);
    const int a = static_cast<int>(boundary[b] % (dim_ + 1));
    local_facet(cells_.row(k).data(), dim_, a, local);
    for (int m = 0; m < dim_; ++m) facets_(b, m) = local[m];
    if (tagger) {
      for (int m = 0; m < dim_; ++m) coords.row(m) = vertices_.row(local[m]);
      facet_tags_[b] = tagger(coords);
    } else if (!tag_of.empty()) {
      auto it = tag_of.find(make_key(local, dim_));
      if (it != tag_of.end()) {
        facet_tags_[b] = it->second;
        ++matched;
      }
    }
  }
  if (matched != tag_of.size())
    throw MeshError("non-conforming mesh: " + std::to_string(tag_of.size() - matched) +
                    " tagged facet(s) are not on the topological boundary");
}

void SimplicialMesh::patch_diameters() {
  const Eigen::Index nv = vertices_.rows();
  std::vector<std::vector<int>> patch(nv);
  for (Eigen::Index k = 0; k < cells_.rows(); ++k)
    for (int a = 0; a <= dim_; ++a)
      for (int b = 0; b <= dim_; ++b) patch[cells_(k, a)].push_back(cells_(k, b));

  h_vertex_ = Eigen::VectorXd::Zero(nv);
  for (Eigen::Index z = 0; z < nv; ++z) {
    auto& p = patch[z];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    double diam = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        diam = std::max(diam, (vertices_.row(p[i]) - vertices_.row(p[j])).norm());
    h_vertex_[z] = diam;
  }
}

std::set<int> SimplicialMesh::tags_present() const {
  return {facet_tags_.data(), facet_tags_.data() + facet_tags_.size()};
}

SimplicialMesh generate_unit_square(int n) {
  if (n < 1) throw InvalidParameter("generate_unit_square: n must be >= 1");
  const int m = n + 1;
  Eigen::MatrixXd x(m * m, 2);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) x.row(j * m + i) << double(i) / n, double(j) / n;

  CellArray cells(2 * n * n, 3);
  int c = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = j * m + i, v10 = v00 + 1, v01 = v00 + m, v11 = v01 + 1;
      cells.row(c++) << v00, v10, v11;
      cells.row(c++) << v00, v11, v01;
    }
  }
  return SimplicialMesh(std::move(x), std::move(cells),
                        [](const Eigen::MatrixXd&) { return 1; });
}

SimplicialMesh generate_unit_cube(int n) {
  if (n < 1) throw InvalidParameter("generate_unit_cube: n must be >= 1");
  const int m = n + 1;
  auto id = [m](int i, int j, int k) { return (k * m + j) * m + i; };
  Eigen::MatrixXd x(m * m * m, 3);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) x.row(id(i, j, k)) << double(i) / n, double(j) / n, double(k) / n;

  // Each tetrahedron walks from the low corner to the high corner along the axes
  // in one of the 6 orders.
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  CellArray cells(6 * n * n * n, 4);
  int c = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (const auto& p : perms) {
          int at[3] = {i, j, k};
          cells(c, 0) = id(at[0], at[1], at[2]);
          for (int step = 0; step < 3; ++step) {
            ++at[p[step]];
            cells(c, step + 1) = id(at[0], at[1], at[2]);
          }
          ++c;
        }

  auto tagger = [](const Eigen::MatrixXd& f) {
    constexpr double eps = 1e-12;
    const Eigen::RowVector3d lo = f.colwise().minCoeff(), hi = f.colwise().maxCoeff();
    if (hi[2] < eps) return 1;
    if (lo[2] > 1 - eps) return 2;
    if (hi[0] < eps) return 3;
    if (lo[0] > 1 - eps) return 4;
    if (hi[1] < eps) return 5;
    if (lo[1] > 1 - eps) return 6;
    return 0;
  };
  return SimplicialMesh(std::move(x), std::move(cells), tagger);
}

SimplicialMesh generate_cylinder(int n_r, int n_theta, int n_z) {
  if (n_r < 1 || n_theta < 3 || n_z < 1)
    throw InvalidParameter("generate_cylinder: need n_r >= 1, n_theta >= 3, n_z >= 1");
  constexpr double radius = 0.5;
  const double two_pi = 2.0 * std::numbers::pi;

  // Disk: vertex 0 at the centre, ring k (1..n_r) holds k * n_theta vertices.
  std::vector<int> ring_start(n_r + 1);
  std::vector<Eigen::Vector2d> disk{Eigen::Vector2d(0.5, 0.5)};
  ring_start[0] = 0;
  for (int k = 1; k <= n_r; ++k) {
    ring_start[k] = static_cast<int>(disk.size());
    const int count = k * n_theta;
    const double r = radius * k / n_r;
    for (int j = 0; j < count; ++j) {
      const double phi = two_pi * j / count;
      disk.emplace_back(0.5 + r * std::cos(phi), 0.5 + r * std::sin(phi));
    }
  }

  // Annulus between rings k-1 and k: merge both rings by angle. Angles are compared
  // as exact fractions (i / m_inner vs j / m_outer).
  std::vector<std::array<int, 3>> tris;
  for (int k = 1; k <= n_r; ++k) {
    const int m_in = (k - 1) * n_theta, m_out = k * n_theta;
    auto inner = [&](int i) { return m_in == 0 ? 0 : ring_start[k - 1] + i % m_in; };
    auto outer = [&](int j) { return ring_start[k] + j % m_out; };
    if (m_in == 0) {
      for (int j = 0; j < m_out; ++j) tris.push_back({0, outer(j), outer(j + 1)});
      continue;
    }
    int i = 0, j = 0;
    while (i < m_in || j < m_out) {
      const bool advance_outer =
          j < m_out && (i == m_in || static_cast<long>(j + 1) * m_in <= static_cast<long>(i + 1) * m_out);
      if (advance_outer) {
        tris.push_back({inner(i), outer(j), outer(j + 1)});
        ++j;
      } else {
        tris.push_back({inner(i), outer(j), inner(i + 1)});
        ++i;
      }
    }
  }

  const int nd = static_cast<int>(disk.size());
  Eigen::MatrixXd x(nd * (n_z + 1), 3);
  for (int l = 0; l <= n_z; ++l)
    for (int v = 0; v < nd; ++v) x.row(l * nd + v) << disk[v].x(), disk[v].y(), double(l) / n_z;

  // Prism (a,b,c) x [l, l+1] with a < b < c: each quad face is cut from the top of
  // its lower-index vertex to the bottom of its higher-index vertex, which matches
  // across neighbouring prisms.
  CellArray cells(static_cast<Eigen::Index>(3 * tris.size() * n_z), 4);
  int c = 0;
  for (int l = 0; l < n_z; ++l) {
    for (auto t : tris) {
      std::sort(t.begin(), t.end());
      const int a = l * nd + t[0], b = l * nd + t[1], cc = l * nd + t[2];
      const int at = a + nd, bt = b + nd, ct = cc + nd;
      cells.row(c++) << a, b, cc, at;
      cells.row(c++) << b, cc, at, bt;
      cells.row(c++) << cc, at, bt, ct;
    }
  }

  auto tagger = [](const Eigen::MatrixXd& f) {
    constexpr double eps = 1e-12;
    if (f.col(2).maxCoeff() < eps) return 2;
    if (f.col(2).minCoeff() > 1 - eps) return 3;
    return 1;
  };
  return SimplicialMesh(std::move(x), std::move(cells), tagger);
}

double shape_regularity(const SimplicialMesh& mesh) {
  const int d = mesh.dim();
  double worst = 0.0;
  Eigen::MatrixXd e(d - 1, d);
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    const auto cell = mesh.cell(k);
    double surface = 0.0;
    for (int opp = 0; opp <= d; ++opp) {
      int f[3];
      local_facet(cell.data(), d, opp, f);
      if (d == 2) {
        surface += (mesh.vertex(f[1]) - mesh.vertex(f[0])).norm();
      } else {
        const Eigen::Vector3d u = (mesh.vertex(f[1]) - mesh.vertex(f[0])).transpose();
        const Eigen::Vector3d v = (mesh.vertex(f[2]) - mesh.vertex(f[0])).transpose();
        surface += 0.5 * u.cross(v).norm();
      }
    }
    const double inradius = d * mesh.cell_volume(k) / surface;
    worst = std::max(worst, mesh.h_cell(k) / inradius);
  }
  return worst;
}

std::vector<int> boundary_vertices(const SimplicialMesh& mesh, const std::set<int>& tags) {
  if (tags.empty()) throw InvalidParameter("boundary_vertices: empty tag set");
  const std::set<int> present = mesh.tags_present();
  for (int t : tags)
    if (!present.count(t))
      throw InvalidParameter("boundary_vertices: no boundary facet carries tag " +
                             std::to_string(t));
  std::vector<int> out;
  const auto& facets = mesh.boundary_facets();
  for (Eigen::Index b = 0; b < facets.rows(); ++b)
    if (tags.count(mesh.boundary_tags()[b]))
      for (Eigen::Index m = 0; m < facets.cols(); ++m) out.push_back(facets(b, m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ericksen
