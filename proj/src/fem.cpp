#include "ericksen/fem.hpp"

#include <vector>

#include "ericksen/quadrature.hpp"

namespace ericksen {

namespace {

using Local = Eigen::Matrix4d;

// Reference products sum_q w_q lambda_a lambda_b of the degree-2 rule, i.e. the mass
// matrix of a cell of unit measure.
Local reference_mass(int dim) {
  const auto rule = simplex_rule(dim, 2);
  Local m = Local::Zero();
  for (Eigen::Index q = 0; q < rule.size(); ++q)
    for (int a = 0; a <= dim; ++a)
      for (int b = 0; b <= dim; ++b)
        m(a, b) += rule.weights[q] * rule.points(q, a) * rule.points(q, b);
  return m;
}

// Visits every cell, lets `local` fill the (d+1)x(d+1) element matrix and sums the
// contributions. Only the upper triangle is computed; the lower one is mirrored so
// that the assembled matrix is exactly symmetric.
template <typename LocalFn>
CsrMatrix assemble(const SimplicialMesh& mesh, LocalFn&& local) {
  const int d = mesh.dim();
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_cells()) * (d + 1) * (d + 1));
  Local a_loc;
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    a_loc.setZero();
    local(k, a_loc);
    const auto cell = mesh.cell(k);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; b <= d; ++b) {
        const double v = a <= b ? a_loc(a, b) : a_loc(b, a);
        triplets.emplace_back(cell[a], cell[b], v);
      }
  }
  CsrMatrix m(mesh.num_vertices(), mesh.num_vertices());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

// vol * grads * grads^T into the leading block.
void local_stiffness(const SimplicialMesh& mesh, Eigen::Index k, double factor, Local& out) {
  const int d = mesh.dim();
  const auto g = mesh.cell_grads(k);
  out.topLeftCorner(d + 1, d + 1).noalias() = (factor * mesh.cell_volume(k)) * g * g.transpose();
}

// sum_q w_q f(x_q)^2 for the P1 field with nodal values `nodal` (one row per local vertex).
template <typename Rule, typename Nodal>
double mean_square(const Rule& rule, const Nodal& nodal) {
  double acc = 0.0;
  for (Eigen::Index q = 0; q < rule.size(); ++q)
    acc += rule.weights[q] * (rule.points.row(q) * nodal).squaredNorm();
  return acc;
}

Eigen::VectorXd local_scalar(const SimplicialMesh& mesh, Eigen::Index k, const ScalarField& s) {
  const auto cell = mesh.cell(k);
  Eigen::VectorXd v(mesh.dim() + 1);
  for (int a = 0; a <= mesh.dim(); ++a) v[a] = s[cell[a]];
  return v;
}

Eigen::MatrixXd local_vector(const SimplicialMesh& mesh, Eigen::Index k, const VectorField& n) {
  const auto cell = mesh.cell(k);
  Eigen::MatrixXd v(mesh.dim() + 1, n.cols());
  for (int a = 0; a <= mesh.dim(); ++a) v.row(a) = n.row(cell[a]);
  return v;
}

}  // namespace

void check_field(const SimplicialMesh& mesh, const ScalarField& s) {
  if (s.size() != mesh.num_vertices())
    throw InvalidParameter("scalar field size does not match vertex count");
  if (!s.allFinite()) throw InvalidParameter("scalar field has non-finite values");
}

void check_field(const SimplicialMesh& mesh, const VectorField& n) {
  if (n.rows() != mesh.num_vertices() || n.cols() != mesh.dim())
    throw InvalidParameter("vector field shape does not match mesh");
  if (!n.allFinite()) throw InvalidParameter("vector field has non-finite values");
}

Eigen::VectorXd cell_gradient(const SimplicialMesh& mesh, Eigen::Index k, const ScalarField& s) {
  return mesh.cell_grads(k).transpose() * local_scalar(mesh, k, s);
}

Eigen::MatrixXd cell_jacobian(const SimplicialMesh& mesh, Eigen::Index k, const VectorField& n) {
  return local_vector(mesh, k, n).transpose() * mesh.cell_grads(k);
}

CsrMatrix assemble_mass(const SimplicialMesh& mesh) {
  const Local ref = reference_mass(mesh.dim());
  return assemble(mesh, [&](Eigen::Index k, Local& out) { out = mesh.cell_volume(k) * ref; });
}

CsrMatrix assemble_stiffness_weighted(const SimplicialMesh& mesh, const Eigen::VectorXd& weights) {
  if (weights.size() != mesh.num_cells())
    throw InvalidParameter("assemble_stiffness_weighted: one weight per cell required");
  for (Eigen::Index k = 0; k < weights.size(); ++k)
    if (!std::isfinite(weights[k]) || weights[k] < 0)
      throw InvalidParameter("assemble_stiffness_weighted: weights must be finite and >= 0");
  return assemble(mesh, [&](Eigen::Index k, Local& out) {
    local_stiffness(mesh, k, weights[k], out);
  });
}

CsrMatrix assemble_stiffness(const SimplicialMesh& mesh) {
  return assemble(mesh, [&](Eigen::Index k, Local& out) { local_stiffness(mesh, k, 1.0, out); });
}

CsrMatrix assemble_s2_stiffness(const SimplicialMesh& mesh, const ScalarField& s) {
  check_field(mesh, s);
  const auto rule = simplex_rule(mesh.dim(), 2);
  return assemble(mesh, [&](Eigen::Index k, Local& out) {
    local_stiffness(mesh, k, mean_square(rule, local_scalar(mesh, k, s)), out);
  });
}

CsrMatrix assemble_gradsq_mass(const SimplicialMesh& mesh, const ScalarField& s) {
  check_field(mesh, s);
  const Local ref = reference_mass(mesh.dim());
  return assemble(mesh, [&](Eigen::Index k, Local& out) {
    out = (cell_gradient(mesh, k, s).squaredNorm() * mesh.cell_volume(k)) * ref;
  });
}

CsrMatrix assemble_nsq_stiffness(const SimplicialMesh& mesh, const VectorField& n) {
  check_field(mesh, n);
  const auto rule = simplex_rule(mesh.dim(), 2);
  return assemble(mesh, [&](Eigen::Index k, Local& out) {
    local_stiffness(mesh, k, mean_square(rule, local_vector(mesh, k, n)), out);
  });
}

CsrMatrix assemble_gradnsq_mass(const SimplicialMesh& mesh, const VectorField& n) {
  check_field(mesh, n);
  const Local ref = reference_mass(mesh.dim());
  return assemble(mesh, [&](Eigen::Index k, Local& out) {
    out = (cell_jacobian(mesh, k, n).squaredNorm() * mesh.cell_volume(k)) * ref;
  });
}

Eigen::VectorXd assemble_load(const SimplicialMesh& mesh, const ScalarField& s,
                              const std::function<double(double)>& f) {
  check_field(mesh, s);
  const int d = mesh.dim();
  const auto rule = simplex_rule(d, 4);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.num_vertices());
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    const Eigen::VectorXd sk = local_scalar(mesh, k, s);
    const auto cell = mesh.cell(k);
    for (Eigen::Index q = 0; q < rule.size(); ++q) {
      const double fq = rule.weights[q] * mesh.cell_volume(k) * f(rule.points.row(q).dot(sk));
      for (int a = 0; a <= d; ++a) load[cell[a]] += fq * rule.points(q, a);
    }
  }
  return load;
}

double energy_elastic(const SimplicialMesh& mesh, const ScalarField& s, const VectorField& n,
                      double kappa) {
  check_field(mesh, s);
  check_field(mesh, n);
  const auto rule = simplex_rule(mesh.dim(), 2);
  double e = 0.0;
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    const Eigen::VectorXd sk = local_scalar(mesh, k, s);
    const Eigen::MatrixXd nk = local_vector(mesh, k, n);
    const Eigen::MatrixXd g = mesh.cell_grads(k);
    const double grad_s2 = (g.transpose() * sk).squaredNorm();
    const double grad_n2 = (nk.transpose() * g).squaredNorm();
    e += mesh.cell_volume(k) *
         (kappa * grad_s2 * mean_square(rule, nk) + grad_n2 * mean_square(rule, sk));
  }
  return 0.5 * e;
}

double energy_potential(const SimplicialMesh& mesh, const ScalarField& s, const DoubleWell<>& dw) {
  check_field(mesh, s);
  if (dw.c_dw == 0.0) return 0.0;
  const auto rule = simplex_rule(mesh.dim(), 4);
  double e = 0.0;
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    const Eigen::VectorXd sk = local_scalar(mesh, k, s);
    double acc = 0.0;
    for (Eigen::Index q = 0; q < rule.size(); ++q)
      acc += rule.weights[q] * dw.value(rule.points.row(q).dot(sk));
    e += mesh.cell_volume(k) * acc;
  }
  return e;
}

double unit_length_error(const SimplicialMesh& mesh, const VectorField& n) {
  check_field(mesh, n);
  const Eigen::VectorXd m = n.rowwise().squaredNorm().array() - 1.0;
  const auto rule = simplex_rule(mesh.dim(), 2);
  double e = 0.0;
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    const Eigen::VectorXd mk = local_scalar(mesh, k, m);
    double acc = 0.0;
    for (Eigen::Index q = 0; q < rule.size(); ++q)
      acc += rule.weights[q] * std::abs(rule.points.row(q).dot(mk));
    e += mesh.cell_volume(k) * acc;
  }
  return e;
}

double l2_inner(const CsrMatrix& mass, const ScalarField& u, const ScalarField& v) {
  return u.dot(mass * v);
}

}  // namespace ericksen
