#include "ericksen/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ericksen/error.hpp"
#include "ericksen/postio.hpp"

namespace ericksen {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

ExperimentSpec saturn_common(const std::string& name) {
  ExperimentSpec e;
  e.name = name;
  e.mesh.generator = MeshSpec::Generator::Gmsh;
  e.c_dw = 0.2;
  e.flow.kappa = 1.0;
  e.bc.kind = BoundarySpec::Kind::Saturn;
  e.init.kind = InitialSpec::Kind::SplitZ;
  e.init.split = 0.5;
  return e;
}

Eigen::VectorXd normalized(const Eigen::VectorXd& v, const char* what) {
  const double len = v.norm();
  if (!(len > 0.0)) throw EvaluationError(std::string(what) + ": direction undefined", -1);
  return v / len;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"point2d",          "plane3d",    "cylinder",
                                                 "propeller",        "saturn-ellipsoid",
                                                 "saturn-two",       "saturn-six"};
  return names;
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec e;
  e.name = name;
  if (name == "point2d") {
    e.mesh.generator = MeshSpec::Generator::Square;
    e.mesh.n = 32;
    e.flow.kappa = 2.0;
    e.c_dw = 0.1 / (0.3 * 0.3);
    e.bc.kind = BoundarySpec::Kind::Radial;
    e.bc.tags = {1};
    e.bc.center = vec({0.5, 0.5});
    e.init.center = vec({0.24, 0.24});
    e.flow.tau_n = e.flow.tau_s = 0.1;
  } else if (name == "plane3d") {
    e.mesh.generator = MeshSpec::Generator::Cube;
    e.mesh.n = 20;
    e.flow.kappa = 0.2;
    e.bc.kind = BoundarySpec::Kind::PerTag;
    e.bc.tags = {1, 2};
    e.bc.directors = {{1, vec({1, 0, 0})}, {2, vec({0, 1, 0})}};
    e.init.center = vec({0.24, 0.24, 0.5});
    e.flow.tau_n = e.flow.tau_s = 0.01;
  } else if (name == "cylinder") {
    e.mesh.generator = MeshSpec::Generator::Cylinder;
    e.flow.kappa = 0.2;
    e.bc.kind = BoundarySpec::Kind::RadialXY;
    e.bc.tags = {1};
    e.bc.center = vec({0.5, 0.5, 0.5});
    e.init.center = vec({0.24, 0.24, 0.5});
    e.flow.tau_n = 0.1;
    e.flow.tau_s = 1e-3;
  } else if (name == "propeller") {
    e.mesh.generator = MeshSpec::Generator::Cube;
    e.mesh.n = 20;
    e.flow.kappa = 2.0;
    e.bc.kind = BoundarySpec::Kind::RadialXY;
    e.bc.tags = {3, 4, 5, 6};
    e.bc.center = vec({0.5, 0.5, 0.5});
    e.init.center = vec({0.24, 0.24, 0.5});
    e.flow.tau_n = 0.02;
    e.flow.tau_s = 0.2;
  } else if (name == "saturn-ellipsoid") {
    e = saturn_common(name);
    e.bc.particles = {{Eigen::Vector3d(0.5, 0.5, 0.5), Eigen::Vector3d(0.3, 0.075, 0.075)}};
    e.flow.tau_n = e.flow.tau_s = 0.01;
  } else if (name == "saturn-two") {
    e = saturn_common(name);
    for (double x : {0.3, 0.7})
      e.bc.particles.push_back({Eigen::Vector3d(x, 0.5, 0.5), Eigen::Vector3d::Constant(0.1)});
    e.flow.tau_n = e.flow.tau_s = 0.0025;
  } else if (name == "saturn-six") {
    e = saturn_common(name);
    e.bc.box_min = Eigen::Vector3d::Constant(-0.1);
    e.bc.box_max = Eigen::Vector3d::Constant(1.1);
    for (int axis = 0; axis < 3; ++axis)
      for (double v : {0.2, 0.8}) {
        Eigen::Vector3d c = Eigen::Vector3d::Constant(0.5);
        c[axis] = v;
        e.bc.particles.push_back({c, Eigen::Vector3d::Constant(0.1)});
      }
    e.flow.tau_n = e.flow.tau_s = 0.005;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw InvalidParameter("unknown preset '" + name + "' (known: " + known + ")");
  }
  return e;
}

SimplicialMesh build_mesh(const MeshSpec& spec, const std::string& experiment) {
  switch (spec.generator) {
    case MeshSpec::Generator::Square: return generate_unit_square(spec.n);
    case MeshSpec::Generator::Cube: return generate_unit_cube(spec.n);
    case MeshSpec::Generator::Cylinder: return generate_cylinder(spec.n_r, spec.n_theta, spec.n_z);
    case MeshSpec::Generator::Gmsh:
      if (spec.path.empty())
        throw InvalidParameter((experiment.empty() ? std::string("this run") : experiment) +
                               " requires imported mesh: set mesh.path to an MSH 2.2 file");
      return read_gmsh(spec.path);
  }
  throw InvalidParameter("unknown mesh generator");
}

DirichletData build_dirichlet(const BoundarySpec& bc, int dim) {
  DirichletData data;
  data.tags = bc.tags;
  const double g = bc.g;
  data.g = [g](const Eigen::VectorXd&) { return g; };

  switch (bc.kind) {
    case BoundarySpec::Kind::Radial: {
      if (bc.center.size() != dim) throw InvalidParameter("bc.center must have dim entries");
      const Eigen::VectorXd c = bc.center;
      data.q = [c](const Eigen::VectorXd& x, int) { return normalized(x - c, "radial anchoring"); };
      break;
    }
    case BoundarySpec::Kind::RadialXY: {
      if (dim != 3) throw InvalidParameter("radial_xy anchoring needs a 3D mesh");
      if (bc.center.size() < 2) throw InvalidParameter("bc.center needs at least x and y");
      const Eigen::Vector2d c = bc.center.head<2>();
      data.q = [c](const Eigen::VectorXd& x, int) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(3);
        r.head<2>() = x.head<2>() - c;
        return normalized(r, "horizontal radial anchoring");
      };
      break;
    }
    case BoundarySpec::Kind::PerTag: {
      std::map<int, Eigen::VectorXd> dirs;
      for (const auto& [tag, v] : bc.directors) {
        if (v.size() != dim) throw InvalidParameter("bc director for tag " + std::to_string(tag) +
                                                    " must have dim entries");
        dirs[tag] = normalized(v, "bc director");
      }
      data.q = [dirs](const Eigen::VectorXd&, int tag) {
        auto it = dirs.find(tag);
        if (it == dirs.end())
          throw InvalidParameter("no bc director for boundary tag " + std::to_string(tag));
        return it->second;
      };
      break;
    }
    case BoundarySpec::Kind::Saturn: {
      if (dim != 3) throw InvalidParameter("saturn anchoring needs a 3D mesh");
      if (bc.particles.empty()) throw InvalidParameter("saturn anchoring needs particles");
      const auto particles = bc.particles;
      const Eigen::Vector3d lo = bc.box_min, hi = bc.box_max;
      const double slack = 1e-6 * (hi - lo).maxCoeff();
      data.q = [particles, lo, hi, slack](const Eigen::VectorXd& xd, int) -> Eigen::VectorXd {
        const Eigen::Vector3d x = xd.head<3>();
        const double face = std::min((x - lo).minCoeff(), (hi - x).minCoeff());
        if (face <= slack) return saturn_ring_bc((x[2] - lo[2]) / (hi[2] - lo[2]));
        // Closest particle by level set; q is its outward normal.
        double best = std::numeric_limits<double>::infinity();
        Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
        for (const auto& p : particles) {
          const Eigen::Vector3d r = (x - p.center).cwiseQuotient(p.semi_axes);
          const double level = std::abs(r.squaredNorm() - 1.0);
          if (level < best) {
            best = level;
            normal = (x - p.center).cwiseQuotient(p.semi_axes.cwiseProduct(p.semi_axes));
          }
        }
        return normalized(normal, "particle normal");
      };
      break;
    }
  }
  return data;
}

EricksenState build_initial_state(const SimplicialMesh& mesh, const InitialSpec& init,
                                  const DirichletNodes& dirichlet) {
  const int d = mesh.dim();
  EricksenState st;
  st.s = ScalarField::Constant(mesh.num_vertices(), init.s0);
  switch (init.kind) {
    case InitialSpec::Kind::PointDefect:
      st.n = point_defect_field(mesh, init.center);
      break;
    case InitialSpec::Kind::SplitZ: {
      if (d != 3) throw InvalidParameter("split_z initial data needs a 3D mesh");
      st.n = VectorField::Zero(mesh.num_vertices(), 3);
      for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z)
        st.n(z, 2) = mesh.vertex(z)[2] >= init.split ? 1.0 : -1.0;
      break;
    }
    case InitialSpec::Kind::Uniform: {
      if (init.direction.size() != d) throw InvalidParameter("init.direction must have dim entries");
      const Eigen::VectorXd dir = normalized(init.direction, "init.direction");
      st.n = dir.transpose().replicate(mesh.num_vertices(), 1);
      break;
    }
  }
  for (int z : dirichlet.vertices) {
    st.s[z] = dirichlet.g[z];
    st.n.row(z) = dirichlet.q.row(z);
  }
  return st;
}

}  // namespace ericksen
