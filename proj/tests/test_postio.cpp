#include <doctest.h>

#include <map>
#include <sstream>

#include "ericksen/error.hpp"
#include "ericksen/postio.hpp"
#include "support.hpp"

using namespace ericksen;

namespace {

const std::string kData = ERICKSEN_TEST_DATA;

int count_lines(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  std::string l;
  int n = 0;
  while (std::getline(is, l)) n += l == line;
  return n;
}

}  // namespace

TEST_CASE("read a small MSH 2.2 file") {
  const SimplicialMesh m = read_gmsh(kData + "/square2.msh");
  CHECK(m.dim() == 2);
  CHECK(m.num_vertices() == 4);  // node 99 is unreferenced
  CHECK(m.num_cells() == 2);
  CHECK(m.volume() == doctest::Approx(1.0));
  std::map<int, int> census;
  for (Eigen::Index b = 0; b < m.boundary_tags().size(); ++b) ++census[m.boundary_tags()[b]];
  CHECK(census == std::map<int, int>{{0, 2}, {3, 1}, {7, 1}});
}

TEST_CASE("parse errors carry line numbers") {
  try {
    read_gmsh(kData + "/malformed.msh");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 22);
  }
  try {
    read_gmsh(kData + "/bad_type.msh");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 21);
    CHECK(std::string(e.what()).find("type 9") != std::string::npos);
  }
  CHECK_THROWS_AS(read_gmsh(kData + "/does_not_exist.msh"), ParseError);

  const auto dir = support::scratch_dir("msh_errors");
  std::ofstream(dir / "v4.msh") << "$MeshFormat\n4.1 0 8\n$EndMeshFormat\n";
  CHECK_THROWS_WITH_AS(read_gmsh((dir / "v4.msh").string()), doctest::Contains("line 2"), ParseError);
  std::ofstream(dir / "flat.msh") << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n3\n1 0 0 0\n2 1 0 0\n3 2 0 0\n"
                                     "$EndNodes\n$Elements\n1\n1 2 2 1 1 1 2 3\n$EndElements\n";
  CHECK_THROWS_WITH_AS(read_gmsh((dir / "flat.msh").string()), doctest::Contains("zero-volume"), ParseError);
}

TEST_CASE("MSH round trip is the identity") {
  const auto dir = support::scratch_dir("msh_roundtrip");
  for (const SimplicialMesh& m : {generate_unit_cube(3), generate_cylinder(3, 5, 2), generate_unit_square(5)}) {
    const std::string path = (dir / "m.msh").string();
    write_gmsh(path, m);
    const SimplicialMesh r = read_gmsh(path);
    CHECK(r.dim() == m.dim());
    CHECK((r.vertices() - m.vertices()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r.cells() == m.cells());
    CHECK(r.boundary_facets().rows() == m.boundary_facets().rows());
    // tags survive as a multiset per facet vertex set
    std::map<std::vector<int>, int> tags;
    for (Eigen::Index b = 0; b < m.boundary_facets().rows(); ++b) {
      std::vector<int> f(m.boundary_facets().row(b).data(), m.boundary_facets().row(b).data() + m.dim());
      std::sort(f.begin(), f.end());
      tags[f] = m.boundary_tags()[b];
    }
    for (Eigen::Index b = 0; b < r.boundary_facets().rows(); ++b) {
      std::vector<int> f(r.boundary_facets().row(b).data(), r.boundary_facets().row(b).data() + r.dim());
      std::sort(f.begin(), f.end());
      CHECK(tags.at(f) == r.boundary_tags()[b]);
    }
  }
}

TEST_CASE("legacy VTK output") {
  const auto dir = support::scratch_dir("vtk");
  Eigen::MatrixXd x(3, 2);
  x << 0, 0, 1, 0, 0, 1;
  CellArray c(1, 3);
  c << 0, 1, 2;
  const SimplicialMesh tri(x, c);
  PointData pd;
  pd.scalars.emplace_back("s", ScalarField::Ones(3));
  pd.vectors.emplace_back("n", VectorField::Constant(3, 2, 0.5));
  const std::string path = (dir / "tri.vtk").string();
  write_vtk(path, tri, pd);
  const std::string text = support::slurp(path);
  CHECK(text.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
  CHECK(count_lines(text, "POINT_DATA 3") == 1);
  CHECK(count_lines(text, "1") == 3);
  CHECK(count_lines(text, "0.5 0.5 0") == 3);
  CHECK(count_lines(text, "1 0 0") == 1);  // padded point
  CHECK(count_lines(text, "5") == 1);      // triangle cell type

  write_vtk((dir / "again.vtk").string(), tri, pd);
  CHECK(support::slurp(dir / "again.vtk") == text);

  write_vtk((dir / "bare.vtk").string(), tri, {});
  CHECK(support::slurp(dir / "bare.vtk").find("POINT_DATA") == std::string::npos);

  const SimplicialMesh cube = generate_unit_cube(1);
  write_vtk((dir / "cube.vtk").string(), cube, {});
  CHECK(count_lines(support::slurp(dir / "cube.vtk"), "10") == 6);

  PointData wrong;
  wrong.scalars.emplace_back("s", ScalarField::Ones(4));
  CHECK_THROWS_AS(write_vtk(path, tri, wrong), InvalidParameter);
  CHECK_THROWS(write_vtk((dir / "missing" / "x.vtk").string(), tri, pd));
}

TEST_CASE("run log CSV round trip") {
  const auto dir = support::scratch_dir("csv");
  RunLog log(2);
  log[0].energy = 16.367512345678901;
  log[1].i = 1;
  log[1].energy = 3.1234567890123456;
  log[1].inner_iterations = 12;
  log[1].err_n = 0.0404;
  log[1].wall_s = 0.123456789;
  const std::string path = (dir / "run.csv").string();
  write_runlog_csv(path, log);
  const std::string text = support::slurp(path);
  CHECK(text.substr(0, text.find('\n')) == "i,E,E1,E2,inner_iters,dts_l2,err_n,s_min,s_max,n_max,wall_s");
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  const RunLog back = read_runlog_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].energy == doctest::Approx(log[0].energy).epsilon(1e-14));
  CHECK(back[1].energy == doctest::Approx(log[1].energy).epsilon(1e-14));
  CHECK(back[1].inner_iterations == 12);
  CHECK(back[1].err_n == 0.0404);
  CHECK_THROWS_AS(write_runlog_csv(path, {}), InvalidParameter);
}
