// ericksen: run, sweep and inspect Ericksen gradient-flow experiments.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ericksen/config.hpp"
#include "ericksen/error.hpp"
#include "ericksen/flow.hpp"
#include "ericksen/postio.hpp"
#include "ericksen/presets.hpp"

namespace fs = std::filesystem;
using namespace ericksen;

namespace {

struct CommonArgs {
  std::string preset;
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  int vtk_every = -1;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--preset", a.preset, "experiment preset (see `presets`)");
  cmd->add_option("--config", a.config, "JSON run configuration");
  cmd->add_option("--set", a.overrides, "override, e.g. flow.tau_n=0.05 (repeatable)");
  cmd->add_option("--out", a.out, "output directory (default output.dir)");
  cmd->add_option("--vtk-every", a.vtk_every, "write step VTK every N outer iterations, 0 = final only");
}

std::vector<std::string> all_overrides(const CommonArgs& a) {
  std::vector<std::string> o = a.overrides;
  if (!a.out.empty()) o.push_back("output.dir=\"" + a.out + "\"");
  if (a.vtk_every >= 0) o.push_back("output.vtk_every=" + std::to_string(a.vtk_every));
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PointData fields(const EricksenState& st) {
  PointData pd;
  pd.scalars.emplace_back("s", st.s);
  pd.vectors.emplace_back("n", st.n);
  pd.vectors.emplace_back("u", st.u());
  return pd;
}

struct Outcome {
  FlowResult result;
  Eigen::Index cells = 0;
};

Outcome run_experiment(const RunConfig& rc, bool with_fields) {
  const ExperimentSpec& e = rc.experiment;
  const SimplicialMesh mesh = build_mesh(e.mesh, e.name);
  const DirichletNodes dirichlet = discretize(build_dirichlet(e.bc, mesh.dim()), mesh);
  const EricksenState initial = build_initial_state(mesh, e.init, dirichlet);
  const DoubleWell<> dw{e.c_dw};

  const CflReport cfl = cfl_check(e.flow, mesh);
  std::cout << "mesh: " << mesh.num_vertices() << " vertices, " << mesh.num_cells()
            << " cells, h_min " << fmt(mesh.h_min()) << "\n"
            << "cfl: " << cfl.formula << " = " << fmt(cfl.value) << "\n";

  fs::create_directories(rc.output.dir);
  const int every = rc.output.vtk_every;
  FlowObserver observer;
  if (with_fields && every > 0)
    observer = [&](const OuterRecord& rec, const EricksenState& st) {
      if (rec.i % every != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "step_%05d.vtk", rec.i);
      write_vtk((fs::path(rc.output.dir) / name).string(), mesh, fields(st));
    };

  Outcome out;
  out.cells = mesh.num_cells();
  out.result = outer_loop(mesh, initial, e.flow, dw, dirichlet, observer);
  write_runlog_csv((fs::path(rc.output.dir) / "runlog.csv").string(), out.result.history);
  if (with_fields)
    write_vtk((fs::path(rc.output.dir) / "final.vtk").string(), mesh, fields(out.result.state));
  return out;
}

std::string summary(const FlowResult& r) {
  const OuterRecord& last = r.history.back();
  std::ostringstream os;
  os << "N=" << r.outer_iterations << " E=" << fmt(last.energy) << " min_s=" << fmt(last.s_min)
     << " err_n=" << fmt(last.err_n) << (r.converged ? " converged" : " max_outer reached");
  return os.str();
}

int report_admissibility(const FlowResult& r) {
  const auto& a = r.admissibility;
  if (!a.unit_length_ok)
    std::cerr << "warning: unit-length error " << fmt(a.unit_length_error) << " exceeds eps "
              << fmt(a.eps) << "\n";
  if (!a.s_bounds_ok)
    std::cerr << "note: s outside (-1/(d-1), 1): [" << fmt(a.s_min) << ", " << fmt(a.s_max) << "]\n";
  if (r.inner_limit_hit) std::cerr << "warning: inner loop hit max_inner\n";
  return r.converged ? 0 : 2;
}

int cmd_run(const CommonArgs& args) {
  nlohmann::json effective;
  const RunConfig rc = load_run_config(args.config, args.preset, all_overrides(args), &effective);
  for (const auto& line : config_banner(effective)) std::cout << "config " << line << "\n";
  fs::create_directories(rc.output.dir);
  std::ofstream((fs::path(rc.output.dir) / "effective_config.json").string())
      << effective.dump(2) << "\n";

  const Outcome out = run_experiment(rc, true);
  std::cout << summary(out.result) << "\n";
  return report_admissibility(out.result);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, const std::vector<std::string>& raw_values,
              const std::vector<std::string>& with) {
  static const std::set<std::string> allowed = {"mesh.n", "flow.tau_n", "flow.alpha"};
  if (!allowed.count(param)) throw InvalidParameter("sweep parameter must be mesh.n, flow.tau_n or flow.alpha");
  std::vector<std::string> values;
  for (const auto& v : raw_values)
    for (const auto& item : split_list(v)) values.push_back(item);
  if (values.empty()) throw InvalidParameter("sweep needs at least one value");

  // Companion keys change in lockstep with the swept value.
  std::vector<std::pair<std::string, std::vector<std::string>>> companions;
  for (const auto& w : with) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) throw InvalidParameter("--with expects key=v1,v2,...");
    companions.emplace_back(w.substr(0, eq), split_list(w.substr(eq + 1)));
    if (companions.back().second.size() != values.size())
      throw InvalidParameter("--with " + companions.back().first + " needs " +
                             std::to_string(values.size()) + " values");
  }

  const std::vector<std::string> base = all_overrides(args);
  nlohmann::json effective;
  const RunConfig probe = load_run_config(args.config, args.preset, base, &effective);
  const fs::path root = probe.output.dir;
  fs::create_directories(root);

  std::ostringstream csv;
  csv << "value,N,E,s_min,err_n,status\n";
  int code = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::vector<std::string> o = base;
    o.push_back(param + "=" + values[k]);
    for (const auto& [key, list] : companions) o.push_back(key + "=" + list[k]);
    o.push_back("output.dir=\"" + (root / ("run_" + std::to_string(k))).string() + "\"");
    std::cout << "sweep " << param << "=" << values[k] << "\n";
    try {
      const RunConfig rc = load_run_config(args.config, args.preset, o);
      const Outcome out = run_experiment(rc, false);
      const OuterRecord& last = out.result.history.back();
      char row[256];
      std::snprintf(row, sizeof row, "%s,%d,%.15g,%.15g,%.15g,%s\n", values[k].c_str(),
                    out.result.outer_iterations, last.energy, last.s_min, last.err_n,
                    out.result.converged ? "converged" : "max_outer");
      csv << row;
      std::cout << summary(out.result) << "\n";
      if (!out.result.converged && code == 0) code = 2;
    } catch (const std::exception& e) {
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      csv << values[k] << ",,,,,error: " << msg << "\n";
      std::cerr << "error: " << e.what() << "\n";
      code = 1;
    }
  }
  std::ofstream((root / "sweep.csv").string()) << csv.str();
  return code;
}

SimplicialMesh mesh_from_source(const std::string& src) {
  const auto colon = src.find(':');
  if (colon != std::string::npos && !fs::exists(src)) {
    const std::string kind = src.substr(0, colon);
    std::vector<int> p;
    for (const auto& item : split_list(src.substr(colon + 1))) {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw InvalidParameter("bad generator parameter '" + item + "'");
      p.push_back(v);
    }
    if (kind == "square" && p.size() == 1) return generate_unit_square(p[0]);
    if (kind == "cube" && p.size() == 1) return generate_unit_cube(p[0]);
    if (kind == "cylinder" && p.size() == 3) return generate_cylinder(p[0], p[1], p[2]);
    throw InvalidParameter("generator spec must be square:N, cube:N or cylinder:NR,NTHETA,NZ");
  }
  return read_gmsh(src);
}

int cmd_mesh_info(const std::string& src) {
  const SimplicialMesh mesh = mesh_from_source(src);
  std::cout << "dim: " << mesh.dim() << "\n"
            << "vertices: " << mesh.num_vertices() << "\n"
            << "cells: " << mesh.num_cells() << "\n"
            << "volume: " << fmt(mesh.volume()) << "\n"
            << "h_min: " << fmt(mesh.h_min()) << "\n"
            << "h_max: " << fmt(mesh.h_max()) << "\n"
            << "shape_regularity: " << fmt(shape_regularity(mesh)) << "\n"
            << "boundary_facets: " << mesh.boundary_facets().rows() << "\n";
  std::map<int, int> census;
  for (Eigen::Index b = 0; b < mesh.boundary_tags().size(); ++b) ++census[mesh.boundary_tags()[b]];
  for (const auto& [tag, count] : census) std::cout << "tag " << tag << ": " << count << " facets\n";
  return 0;
}

int cmd_presets() {
  for (const auto& name : preset_names()) {
    const ExperimentSpec e = preset(name);
    const nlohmann::json j = to_json(RunConfig{e, {}});
    std::cout << name << ": mesh=" << j["mesh"]["generator"].get<std::string>()
              << " kappa=" << fmt(e.flow.kappa) << " c_dw=" << fmt(e.c_dw)
              << " tau_n=" << fmt(e.flow.tau_n) << " tau_s=" << fmt(e.flow.tau_s)
              << " bc=" << j["model"]["bc"]["kind"].get<std::string>()
              << " init=" << j["init"]["kind"].get<std::string>() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ericksen liquid crystal gradient flow"};
  app.require_subcommand(1);

  CommonArgs run_args;
  auto* run = app.add_subcommand("run", "run one experiment");
  add_common(run, run_args);

  CommonArgs sweep_args;
  std::string param;
  std::vector<std::string> values, with;
  auto* sweep = app.add_subcommand("sweep", "run one experiment per parameter value");
  add_common(sweep, sweep_args);
  sweep->add_option("--param", param, "mesh.n, flow.tau_n or flow.alpha")->required();
  sweep->add_option("--values", values, "comma or space separated values");
  sweep->add_option("--with", with, "companion key=v1,v2,... changed in lockstep (repeatable)");

  std::string source;
  auto* info = app.add_subcommand("mesh-info", "mesh statistics");
  info->add_option("source", source, "MSH file or square:N | cube:N | cylinder:NR,NTHETA,NZ")->required();

  auto* list = app.add_subcommand("presets", "list presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*sweep) return cmd_sweep(sweep_args, param, values, with);
    if (*info) return cmd_mesh_info(source);
    if (*list) return cmd_presets();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
