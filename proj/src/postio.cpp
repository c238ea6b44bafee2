#include "ericksen/postio.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "ericksen/error.hpp"

namespace ericksen {

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& path) : in_(path) {
    if (!in_) throw ParseError("cannot open " + path, 0);
  }
  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  std::string require(const char* what) {
    std::string line;
    if (!next(line)) throw ParseError(std::string("unexpected end of file, expected ") + what, number_);
    return line;
  }
  long number() const { return number_; }

 private:
  std::ifstream in_;
  long number_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

long parse_count(const std::string& line, long lineno) {
  std::istringstream is(line);
  long n = -1;
  if (!(is >> n) || n < 0) throw ParseError("expected a nonnegative count", lineno);
  return n;
}

struct RawElement {
  int type;
  int tag;
  std::vector<long> nodes;
  long line;
};

std::string fmt(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

SimplicialMesh read_gmsh(const std::string& path) {
  LineReader reader(path);
  bool have_format = false;
  std::map<long, Eigen::Index> node_index;
  std::vector<Eigen::Vector3d> coords;
  std::vector<RawElement> elements;
  long elements_line = 0;

  std::string line;
  while (reader.next(line)) {
    const std::string section = trim(line);
    if (section.empty()) continue;
    if (section == "$MeshFormat") {
      std::istringstream is(reader.require("format line"));
      std::string version;
      int file_type = -1, data_size = 0;
      if (!(is >> version >> file_type >> data_size))
        throw ParseError("malformed $MeshFormat line", reader.number());
      if (version.rfind("2.", 0) != 0)
        throw ParseError("unsupported MSH version " + version + " (need 2.2)", reader.number());
      if (file_type != 0) throw ParseError("binary MSH is not supported", reader.number());
      if (trim(reader.require("$EndMeshFormat")) != "$EndMeshFormat")
        throw ParseError("expected $EndMeshFormat", reader.number());
      have_format = true;
    } else if (section == "$Nodes") {
      if (!have_format) throw ParseError("$Nodes before $MeshFormat", reader.number());
      const long count = parse_count(reader.require("node count"), reader.number());
      for (long i = 0; i < count; ++i) {
        std::istringstream is(reader.require("node"));
        long id;
        double x, y, z;
        if (!(is >> id >> x >> y >> z)) throw ParseError("malformed node line", reader.number());
        if (!node_index.emplace(id, static_cast<Eigen::Index>(coords.size())).second)
          throw ParseError("duplicate node id " + std::to_string(id), reader.number());
        coords.emplace_back(x, y, z);
      }
      if (trim(reader.require("$EndNodes")) != "$EndNodes")
        throw ParseError("expected $EndNodes", reader.number());
    } else if (section == "$Elements") {
      if (!have_format) throw ParseError("$Elements before $MeshFormat", reader.number());
      elements_line = reader.number();
      const long count = parse_count(reader.require("element count"), reader.number());
      for (long i = 0; i < count; ++i) {
        std::istringstream is(reader.require("element"));
        long id;
        int type, ntags;
        if (!(is >> id >> type >> ntags) || ntags < 0)
          throw ParseError("malformed element line", reader.number());
        int nnodes = 0;
        switch (type) {
          case 15: nnodes = 1; break;
          case 1: nnodes = 2; break;
          case 2: nnodes = 3; break;
          case 4: nnodes = 4; break;
          default:
            throw ParseError("unsupported element type " + std::to_string(type), reader.number());
        }
        RawElement el{type, 0, {}, reader.number()};
        for (int t = 0; t < ntags; ++t) {
          int tag;
          if (!(is >> tag)) throw ParseError("malformed element tags", reader.number());
          if (t == 0) el.tag = tag;
        }
        for (int v = 0; v < nnodes; ++v) {
          long node;
          if (!(is >> node)) throw ParseError("missing element nodes", reader.number());
          el.nodes.push_back(node);
        }
        if (type != 15) elements.push_back(std::move(el));
      }
      if (trim(reader.require("$EndElements")) != "$EndElements")
        throw ParseError("expected $EndElements", reader.number());
    } else if (section[0] == '$') {
      const std::string end = "$End" + section.substr(1);
      while (trim(reader.require(end.c_str())) != end) {
      }
    } else {
      throw ParseError("unexpected content outside a section", reader.number());
    }
  }
  if (!have_format) throw ParseError("missing $MeshFormat", reader.number());

  bool has_tets = false, has_tris = false;
  for (const auto& el : elements) {
    has_tets = has_tets || el.type == 4;
    has_tris = has_tris || el.type == 2;
  }
  const int dim = has_tets ? 3 : 2;
  const int cell_type = has_tets ? 4 : 2;
  const int facet_type = has_tets ? 2 : 1;
  if (!has_tets && !has_tris) throw ParseError("no triangle or tetrahedron elements", elements_line);

  // Compact numbering over nodes referenced by cells, keeping the file order.
  auto resolve = [&](long node, long lineno) {
    auto it = node_index.find(node);
    if (it == node_index.end())
      throw ParseError("element references unknown node " + std::to_string(node), lineno);
    return it->second;
  };
  std::vector<std::vector<Eigen::Index>> cell_nodes;
  std::vector<long> cell_lines;
  std::vector<char> used(coords.size(), 0);
  for (const auto& el : elements) {
    if (el.type != cell_type) continue;
    std::vector<Eigen::Index> nodes;
    for (long node : el.nodes) {
      nodes.push_back(resolve(node, el.line));
      used[nodes.back()] = 1;
    }
    cell_nodes.push_back(std::move(nodes));
    cell_lines.push_back(el.line);
  }
  std::vector<Eigen::Index> compact(coords.size(), -1);
  std::vector<Eigen::Index> order;
  for (std::size_t raw = 0; raw < coords.size(); ++raw)
    if (used[raw]) {
      compact[raw] = static_cast<Eigen::Index>(order.size());
      order.push_back(static_cast<Eigen::Index>(raw));
    }

  for (std::size_t k = 0; k < cell_nodes.size(); ++k) {
    auto& nodes = cell_nodes[k];
    // Degenerate cells are reported here, where the line number is known.
    Eigen::MatrixXd edges(dim, dim);
    for (int a = 0; a < dim; ++a) edges.col(a) = (coords[nodes[a + 1]] - coords[nodes[0]]).head(dim);
    double diam = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a)
      for (std::size_t b = a + 1; b < nodes.size(); ++b)
        diam = std::max(diam, (coords[nodes[a]] - coords[nodes[b]]).norm());
    if (!(std::abs(edges.determinant()) > 1e-14 * std::pow(diam, dim)))
      throw ParseError("zero-volume cell", cell_lines[k]);
    for (auto& raw : nodes) raw = compact[raw];
  }

  Eigen::MatrixXd vertices(static_cast<Eigen::Index>(order.size()), dim);
  for (std::size_t i = 0; i < order.size(); ++i)
    vertices.row(static_cast<Eigen::Index>(i)) = coords[order[i]].head(dim).transpose();
  CellArray cells(static_cast<Eigen::Index>(cell_nodes.size()), dim + 1);
  for (std::size_t k = 0; k < cell_nodes.size(); ++k)
    for (int a = 0; a <= dim; ++a) cells(static_cast<Eigen::Index>(k), a) = static_cast<int>(cell_nodes[k][a]);

  std::vector<TaggedFacet> tagged;
  for (const auto& el : elements) {
    if (el.type != facet_type) continue;
    TaggedFacet f;
    f.tag = el.tag;
    for (long node : el.nodes) {
      const Eigen::Index raw = resolve(node, el.line);
      if (compact[raw] < 0) throw ParseError("boundary element off the cell complex", el.line);
      f.vertices.push_back(static_cast<int>(compact[raw]));
    }
    tagged.push_back(std::move(f));
  }

  try {
    return SimplicialMesh(std::move(vertices), std::move(cells), tagged);
  } catch (const MeshError& e) {
    throw ParseError(e.what(), elements_line);
  }
}

void write_gmsh(const std::string& path, const SimplicialMesh& mesh) {
  std::ofstream out = open_out(path);
  const int d = mesh.dim();
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n" << mesh.num_vertices() << "\n";
  for (Eigen::Index z = 0; z < mesh.num_vertices(); ++z) {
    out << z + 1;
    for (int c = 0; c < 3; ++c) out << ' ' << fmt(c < d ? mesh.vertex(z)[c] : 0.0, 17);
    out << "\n";
  }
  const auto& facets = mesh.boundary_facets();
  out << "$EndNodes\n$Elements\n" << facets.rows() + mesh.num_cells() << "\n";
  long id = 1;
  for (Eigen::Index b = 0; b < facets.rows(); ++b) {
    const int tag = mesh.boundary_tags()[b];
    out << id++ << ' ' << (d == 3 ? 2 : 1) << " 2 " << tag << ' ' << tag;
    for (Eigen::Index m = 0; m < facets.cols(); ++m) out << ' ' << facets(b, m) + 1;
    out << "\n";
  }
  for (Eigen::Index k = 0; k < mesh.num_cells(); ++k) {
    out << id++ << ' ' << (d == 3 ? 4 : 2) << " 2 1 1";
    for (int a = 0; a <= d; ++a) out << ' ' << mesh.cell(k)[a] + 1;
    out << "\n";
  }
  out << "$EndElements\n";
}

void write_vtk(const std::string& path, const SimplicialMesh& mesh, const PointData& data) {
  const Eigen::Index nv = mesh.num_vertices();
  const int d = mesh.dim();
  for (const auto& [name, f] : data.scalars)
    if (f.size() != nv) throw InvalidParameter("write_vtk: field '" + name + "' does not match mesh");
  for (const auto& [name, f] : data.vectors)
    if (f.rows() != nv || f.cols() != d)
      throw InvalidParameter("write_vtk: field '" + name + "' does not match mesh");

  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\nericksen\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (Eigen::Index z = 0; z < nv; ++z)
    out << fmt(mesh.vertex(z)[0], 17) << ' ' << fmt(mesh.vertex(z)[1], 17) << ' '
        << fmt(d == 3 ? mesh.vertex(z)[2] : 0.0, 17) << "\n";
  const Eigen::Index nc = mesh.num_cells();
  out << "CELLS " << nc << ' ' << nc * (d + 2) << "\n";
  for (Eigen::Index k = 0; k < nc; ++k) {
    out << d + 1;
    for (int a = 0; a <= d; ++a) out << ' ' << mesh.cell(k)[a];
    out << "\n";
  }
  out << "CELL_TYPES " << nc << "\n";
  for (Eigen::Index k = 0; k < nc; ++k) out << (d == 3 ? 10 : 5) << "\n";
  if (data.scalars.empty() && data.vectors.empty()) return;
  out << "POINT_DATA " << nv << "\n";
  for (const auto& [name, f] : data.scalars) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index z = 0; z < nv; ++z) out << fmt(f[z], 17) << "\n";
  }
  for (const auto& [name, f] : data.vectors) {
    out << "VECTORS " << name << " double\n";
    for (Eigen::Index z = 0; z < nv; ++z)
      out << fmt(f(z, 0), 17) << ' ' << fmt(f(z, 1), 17) << ' ' << fmt(d == 3 ? f(z, 2) : 0.0, 17)
          << "\n";
  }
}

void write_runlog_csv(const std::string& path, const RunLog& log) {
  if (log.empty()) throw InvalidParameter("write_runlog_csv: empty log");
  std::ofstream out = open_out(path);
  out << kRunLogHeader << "\n";
  for (const auto& r : log) {
    out << r.i << ',' << fmt(r.energy, 15) << ',' << fmt(r.e1, 15) << ',' << fmt(r.e2, 15) << ','
        << r.inner_iterations << ',' << fmt(r.dts_l2, 15) << ',' << fmt(r.err_n, 15) << ','
        << fmt(r.s_min, 15) << ',' << fmt(r.s_max, 15) << ',' << fmt(r.n_max, 15) << ','
        << fmt(r.wall_s, 6) << "\n";
  }
}

RunLog read_runlog_csv(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line) || line != kRunLogHeader) throw ParseError("bad run log header", 1);
  RunLog log;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    OuterRecord r;
    if (!(is >> r.i >> r.energy >> r.e1 >> r.e2 >> r.inner_iterations >> r.dts_l2 >> r.err_n >>
          r.s_min >> r.s_max >> r.n_max >> r.wall_s))
      throw ParseError("malformed run log row", reader.number());
    log.push_back(r);
  }
  return log;
}

}  // namespace ericksen
