#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "ericksen/mesh.hpp"
#include "ericksen/model.hpp"

namespace support {

// Unit square with interior vertices jittered by up to `jitter` * h, so cells are
// neither right-angled nor mirror symmetric.
inline ericksen::SimplicialMesh jittered_square(int n, double jitter, std::mt19937& rng) {
  const ericksen::SimplicialMesh base = ericksen::generate_unit_square(n);
  Eigen::MatrixXd v = base.vertices();
  std::uniform_real_distribution<double> u(-jitter / n, jitter / n);
  for (Eigen::Index z = 0; z < v.rows(); ++z) {
    const bool interior = (v.row(z).array() > 1e-12).all() && (v.row(z).array() < 1 - 1e-12).all();
    if (interior)
      for (Eigen::Index c = 0; c < v.cols(); ++c) v(z, c) += u(rng);
  }
  return ericksen::SimplicialMesh(v, base.cells(), [](const Eigen::MatrixXd&) { return 1; });
}

inline ericksen::SimplicialMesh jittered_cube(int n, double jitter, std::mt19937& rng) {
  const ericksen::SimplicialMesh base = ericksen::generate_unit_cube(n);
  Eigen::MatrixXd v = base.vertices();
  std::uniform_real_distribution<double> u(-jitter / n, jitter / n);
  for (Eigen::Index z = 0; z < v.rows(); ++z) {
    const bool interior = (v.row(z).array() > 1e-12).all() && (v.row(z).array() < 1 - 1e-12).all();
    if (interior)
      for (Eigen::Index c = 0; c < v.cols(); ++c) v(z, c) += u(rng);
  }
  return ericksen::SimplicialMesh(v, base.cells(), [](const Eigen::MatrixXd&) { return 1; });
}

inline Eigen::VectorXd random_field(Eigen::Index n, double lo, double hi, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd s(n);
  for (auto& x : s) x = u(rng);
  return s;
}

inline ericksen::VectorField random_unit_field(Eigen::Index n, int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  ericksen::VectorField v(n, d);
  for (Eigen::Index z = 0; z < n; ++z) {
    for (int c = 0; c < d; ++c) v(z, c) = g(rng);
    v.row(z).normalize();
  }
  return v;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("ericksen_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace support
