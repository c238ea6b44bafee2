#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ericksen/flow.hpp"
#include "ericksen/mesh.hpp"
#include "ericksen/types.hpp"

namespace ericksen {

/// Reads the ASCII MSH 2.2 subset: $MeshFormat, $Nodes, $Elements with triangles (type 2)
/// and tetrahedra (type 4). In a tetrahedral mesh the triangles are boundary facets whose
/// first (physical) tag becomes the boundary tag; in a triangle mesh the lines (type 1)
/// play that role. Points (type 15) and $PhysicalNames are ignored, unreferenced nodes
/// are dropped. Errors carry the offending line number.
SimplicialMesh read_gmsh(const std::string& path);

/// Writes `mesh` as MSH 2.2 ASCII, boundary facets first (tagged), then cells.
void write_gmsh(const std::string& path, const SimplicialMesh& mesh);

struct PointData {
  std::vector<std::pair<std::string, ScalarField>> scalars;
  std::vector<std::pair<std::string, VectorField>> vectors;
};

/// Legacy VTK ASCII unstructured grid. 2D points and vectors are padded with z = 0.
void write_vtk(const std::string& path, const SimplicialMesh& mesh, const PointData& data);

/// Column header of the run log CSV.
inline constexpr const char* kRunLogHeader =
    "i,E,E1,E2,inner_iters,dts_l2,err_n,s_min,s_max,n_max,wall_s";

/// One row per outer iteration, 15 significant digits.
void write_runlog_csv(const std::string& path, const RunLog& log);

/// Parses a file written by write_runlog_csv back into records (columns above only).
RunLog read_runlog_csv(const std::string& path);

}  // namespace ericksen
