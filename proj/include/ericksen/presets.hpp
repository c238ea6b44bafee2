#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ericksen/double_well.hpp"
#include "ericksen/flow.hpp"
#include "ericksen/mesh.hpp"
#include "ericksen/model.hpp"

namespace ericksen {

struct MeshSpec {
  enum class Generator { Square, Cube, Cylinder, Gmsh };
  Generator generator = Generator::Square;
  int n = 32;
  int n_r = 10;
  int n_theta = 6;
  int n_z = 20;
  std::string path;  // Gmsh only
};

struct Particle {
  Eigen::Vector3d center = Eigen::Vector3d::Constant(0.5);
  Eigen::Vector3d semi_axes = Eigen::Vector3d::Constant(0.1);
};

/// Anchoring data. Radial: q = (x - c)/|x - c|. RadialXY: horizontal part of that.
/// PerTag: constant director per boundary tag. Saturn: outward particle normal on the
/// particles, n_sr of the rescaled height on the outer box faces.
struct BoundarySpec {
  enum class Kind { Radial, RadialXY, PerTag, Saturn };
  Kind kind = Kind::Radial;
  std::set<int> tags;  // empty: whole boundary
  double g = kSHat;
  Eigen::VectorXd center;
  std::map<int, Eigen::VectorXd> directors;
  std::vector<Particle> particles;
  Eigen::Vector3d box_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d box_max = Eigen::Vector3d::Ones();
};

/// Initial director away from Gamma_D; s0 is constant. SplitZ: +e3 for z3 >= split, else -e3.
struct InitialSpec {
  enum class Kind { PointDefect, SplitZ, Uniform };
  Kind kind = Kind::PointDefect;
  double s0 = kSHat;
  Eigen::VectorXd center;
  double split = 0.5;
  Eigen::VectorXd direction;
};

struct ExperimentSpec {
  std::string name;
  MeshSpec mesh;
  double c_dw = 0.0;
  BoundarySpec bc;
  InitialSpec init;
  FlowConfig flow;  // flow.kappa is the model's kappa
};

/// point2d, plane3d, cylinder, propeller, saturn-ellipsoid, saturn-two, saturn-six.
const std::vector<std::string>& preset_names();

/// Throws InvalidParameter for an unknown name.
ExperimentSpec preset(const std::string& name);

/// Throws InvalidParameter("... requires imported mesh ...") for a Gmsh spec without a path.
SimplicialMesh build_mesh(const MeshSpec& spec, const std::string& experiment = {});

DirichletData build_dirichlet(const BoundarySpec& bc, int dim);

/// s = s0, n from `init`, overwritten by (g_h, q_h) at the Dirichlet vertices.
EricksenState build_initial_state(const SimplicialMesh& mesh, const InitialSpec& init,
                                  const DirichletNodes& dirichlet);

}  // namespace ericksen
