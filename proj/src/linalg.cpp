#include "ericksen/linalg.hpp"

#include <Eigen/Geometry>

namespace ericksen {

CgResult cg_solve(const CsrMatrix& a, const Eigen::VectorXd& b, const CgOptions& opts) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw InvalidParameter("cg_solve: dimension mismatch");
  return cg_solve([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = a * x; },
                  Eigen::VectorXd(a.diagonal()), b, opts);
}

VectorField TangentBasis::lift(const Eigen::VectorXd& y, Eigen::Index num_vertices) const {
  VectorField t = VectorField::Zero(num_vertices, dim);
  for (std::size_t i = 0; i < free_vertices.size(); ++i)
    t.row(free_vertices[i]) =
        (frame(i) * y.segment(static_cast<Eigen::Index>(i) * (dim - 1), dim - 1)).transpose();
  return t;
}

Eigen::VectorXd TangentBasis::project(const VectorField& t) const {
  Eigen::VectorXd y(reduced_size());
  for (std::size_t i = 0; i < free_vertices.size(); ++i)
    y.segment(static_cast<Eigen::Index>(i) * (dim - 1), dim - 1) =
        frame(i).transpose() * t.row(free_vertices[i]).transpose();
  return y;
}

TangentBasis build_tangent_basis(const VectorField& n, const std::vector<int>& free_vertices) {
  const int d = static_cast<int>(n.cols());
  if (d != 2 && d != 3) throw InvalidParameter("build_tangent_basis: dimension must be 2 or 3");
  TangentBasis basis;
  basis.dim = d;
  basis.free_vertices = free_vertices;
  basis.frames.resize(static_cast<Eigen::Index>(free_vertices.size()) * d, d - 1);

  for (std::size_t i = 0; i < free_vertices.size(); ++i) {
    const int z = free_vertices[i];
    if (z < 0 || z >= n.rows()) throw InvalidParameter("build_tangent_basis: vertex out of range");
    const Eigen::VectorXd nz = n.row(z).transpose();
    const double len = nz.norm();
    if (!(len > 0.0))
      throw DegenerateDirector("zero director at free vertex " + std::to_string(z), z);
    const Eigen::VectorXd unit = nz / len;

    int axis = 0;
    for (int c = 1; c < d; ++c)
      if (std::abs(unit[c]) < std::abs(unit[axis])) axis = c;
    Eigen::VectorXd e = Eigen::VectorXd::Unit(d, axis);
    e -= e.dot(unit) * unit;
    e.normalize();

    auto f = basis.frames.middleRows(static_cast<Eigen::Index>(i) * d, d);
    f.col(0) = e;
    if (d == 3) f.col(1) = Eigen::Vector3d(unit).cross(Eigen::Vector3d(e));
  }
  return basis;
}

ReducedSolveResult reduced_solve(const CsrMatrix& a_scalar, const TangentBasis& basis,
                                 const VectorField& rhs, const CgOptions& opts) {
  const Eigen::Index nv = a_scalar.rows();
  if (rhs.rows() != nv || rhs.cols() != basis.dim)
    throw InvalidParameter("reduced_solve: rhs shape mismatch");

  // Z_z^T Z_z = I, so the diagonal of the reduced operator is A_zz repeated.
  Eigen::VectorXd diag(basis.reduced_size());
  for (std::size_t i = 0; i < basis.free_vertices.size(); ++i)
    diag.segment(static_cast<Eigen::Index>(i) * (basis.dim - 1), basis.dim - 1)
        .setConstant(a_scalar.coeff(basis.free_vertices[i], basis.free_vertices[i]));

  VectorField t_work, at_work;
  auto apply = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
    t_work = basis.lift(y, nv);
    at_work.noalias() = a_scalar * t_work;
    out = basis.project(at_work);
  };

  ReducedSolveResult result;
  const Eigen::VectorXd b = basis.project(rhs);
  if (b.size() == 0) {
    result.t = VectorField::Zero(nv, basis.dim);
    return result;
  }
  const CgResult cg = cg_solve(apply, diag, b, opts);
  result.t = basis.lift(cg.x, nv);
  result.iterations = cg.iterations;
  result.residual = cg.residual;
  return result;
}

}  // namespace ericksen
