#include "ericksen/config.hpp"

#include <fstream>

#include "ericksen/error.hpp"

namespace ericksen {

using nlohmann::json;

namespace {

json to_array(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

const char* generator_name(MeshSpec::Generator g) {
  switch (g) {
    case MeshSpec::Generator::Square: return "square";
    case MeshSpec::Generator::Cube: return "cube";
    case MeshSpec::Generator::Cylinder: return "cylinder";
    case MeshSpec::Generator::Gmsh: return "gmsh";
  }
  return "?";
}

const char* bc_name(BoundarySpec::Kind k) {
  switch (k) {
    case BoundarySpec::Kind::Radial: return "radial";
    case BoundarySpec::Kind::RadialXY: return "radial_xy";
    case BoundarySpec::Kind::PerTag: return "per_tag";
    case BoundarySpec::Kind::Saturn: return "saturn";
  }
  return "?";
}

const char* init_name(InitialSpec::Kind k) {
  switch (k) {
    case InitialSpec::Kind::PointDefect: return "point_defect";
    case InitialSpec::Kind::SplitZ: return "split_z";
    case InitialSpec::Kind::Uniform: return "uniform";
  }
  return "?";
}

// Strict reader over one JSON object: every key must be consumed exactly once.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParseError(path_ + ": expected an object", 0);
  }
  void finish() const {
    for (const auto& [key, v] : j_.items())
      if (!seen_.count(key)) throw ParseError("unknown key " + path_ + "." + key, 0);
  }

  const json& at(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) throw ParseError("missing key " + path_ + "." + key, 0);
    seen_.insert(key);
    return *it;
  }
  std::string name(const std::string& key) const { return path_ + "." + key; }

  template <typename T>
  T get(const std::string& key) {
    const json& v = at(key);
    try {
      if constexpr (std::is_same_v<T, int>) {
        if (!v.is_number_integer()) throw ParseError("", 0);
      } else if constexpr (std::is_arithmetic_v<T>) {
        if (!v.is_number()) throw ParseError("", 0);
      }
      return v.get<T>();
    } catch (const std::exception&) {
      throw ParseError(name(key) + ": wrong type (" + std::string(v.type_name()) + ")", 0);
    }
  }
  Eigen::VectorXd vector(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) throw ParseError(name(key) + ": expected an array of numbers", 0);
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ParseError(name(key) + ": expected an array of numbers", 0);
      out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
  }
  Eigen::Vector3d vector3(const std::string& key) {
    const Eigen::VectorXd v = vector(key);
    if (v.size() != 3) throw ParseError(name(key) + ": expected 3 numbers", 0);
    return v;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void merge(json& base, const json& patch, const std::string& path) {
  for (const auto& [key, v] : patch.items()) {
    auto it = base.find(key);
    if (it == base.end()) throw ParseError("unknown key " + path + key, 0);
    // Objects with free-form keys (bc.directors) are replaced wholesale.
    if (it->is_object() && v.is_object() && key != "directors")
      merge(*it, v, path + key + ".");
    else
      *it = v;
  }
}

}  // namespace

json to_json(const RunConfig& config) {
  const ExperimentSpec& e = config.experiment;
  json j;
  j["name"] = e.name;
  j["mesh"] = {{"generator", generator_name(e.mesh.generator)}, {"n", e.mesh.n},
               {"n_r", e.mesh.n_r}, {"n_theta", e.mesh.n_theta}, {"n_z", e.mesh.n_z},
               {"path", e.mesh.path}};

  json directors = json::object();
  for (const auto& [tag, v] : e.bc.directors) directors[std::to_string(tag)] = to_array(v);
  json particles = json::array();
  for (const auto& p : e.bc.particles)
    particles.push_back({{"center", to_array(p.center)}, {"semi_axes", to_array(p.semi_axes)}});
  j["model"] = {{"kappa", e.flow.kappa},
                {"c_dw", e.c_dw},
                {"dirichlet_tags", e.bc.tags},
                {"bc",
                 {{"kind", bc_name(e.bc.kind)},
                  {"g", e.bc.g},
                  {"center", to_array(e.bc.center)},
                  {"directors", directors},
                  {"particles", particles},
                  {"box_min", to_array(e.bc.box_min)},
                  {"box_max", to_array(e.bc.box_max)}}}};
  j["init"] = {{"kind", init_name(e.init.kind)}, {"s0", e.init.s0},
               {"center", to_array(e.init.center)}, {"split", e.init.split},
               {"direction", to_array(e.init.direction)}};
  const FlowConfig& f = e.flow;
  j["flow"] = {{"tau_n", f.tau_n},
               {"tau_s", f.tau_s},
               {"metric", f.metric.kind == MetricKind::L2 ? "l2" : "h1"},
               {"alpha", f.metric.alpha},
               {"tol_inner", f.tol_inner},
               {"tol_outer", f.tol_outer},
               {"eps", f.eps_admissible},
               {"max_outer", f.max_outer},
               {"max_inner", f.max_inner},
               {"cg_tol", f.cg_tol},
               {"cg_maxit", f.cg_maxit}};
  j["output"] = {{"dir", config.output.dir}, {"vtk_every", config.output.vtk_every}};
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig rc;
  ExperimentSpec& e = rc.experiment;
  Section top(j, "config");
  e.name = top.get<std::string>("name");
  {
    Section m(top.at("mesh"), "mesh");
    const auto gen = m.get<std::string>("generator");
    if (gen == "square") e.mesh.generator = MeshSpec::Generator::Square;
    else if (gen == "cube") e.mesh.generator = MeshSpec::Generator::Cube;
    else if (gen == "cylinder") e.mesh.generator = MeshSpec::Generator::Cylinder;
    else if (gen == "gmsh") e.mesh.generator = MeshSpec::Generator::Gmsh;
    else throw ParseError("mesh.generator: expected square|cube|cylinder|gmsh, got '" + gen + "'", 0);
    e.mesh.n = m.get<int>("n");
    e.mesh.n_r = m.get<int>("n_r");
    e.mesh.n_theta = m.get<int>("n_theta");
    e.mesh.n_z = m.get<int>("n_z");
    e.mesh.path = m.get<std::string>("path");
    m.finish();
  }
  {
    Section m(top.at("model"), "model");
    e.flow.kappa = m.get<double>("kappa");
    e.c_dw = m.get<double>("c_dw");
    if (!(e.c_dw >= 0.0)) throw InvalidParameter("model.c_dw must be nonnegative");
    e.bc.tags = m.get<std::set<int>>("dirichlet_tags");
    Section b(m.at("bc"), "model.bc");
    const auto kind = b.get<std::string>("kind");
    if (kind == "radial") e.bc.kind = BoundarySpec::Kind::Radial;
    else if (kind == "radial_xy") e.bc.kind = BoundarySpec::Kind::RadialXY;
    else if (kind == "per_tag") e.bc.kind = BoundarySpec::Kind::PerTag;
    else if (kind == "saturn") e.bc.kind = BoundarySpec::Kind::Saturn;
    else throw ParseError("model.bc.kind: expected radial|radial_xy|per_tag|saturn, got '" + kind + "'", 0);
    e.bc.g = b.get<double>("g");
    e.bc.center = b.vector("center");
    {
      const json& dirs = b.at("directors");
      if (!dirs.is_object()) throw ParseError("model.bc.directors: expected an object", 0);
      Section d(dirs, "model.bc.directors");
      for (const auto& [key, v] : dirs.items()) {
        int tag = 0;
        try {
          std::size_t used = 0;
          tag = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw ParseError("model.bc.directors: key '" + key + "' is not a boundary tag", 0);
        }
        e.bc.directors[tag] = d.vector(key);
      }
      d.finish();
    }
    const json& parts = b.at("particles");
    if (!parts.is_array()) throw ParseError("model.bc.particles: expected an array", 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Section p(parts[i], "model.bc.particles[" + std::to_string(i) + "]");
      e.bc.particles.push_back({p.vector3("center"), p.vector3("semi_axes")});
      p.finish();
      if (!(e.bc.particles.back().semi_axes.minCoeff() > 0.0))
        throw InvalidParameter("particle semi-axes must be positive");
    }
    e.bc.box_min = b.vector3("box_min");
    e.bc.box_max = b.vector3("box_max");
    b.finish();
    m.finish();
  }
  {
    Section s(top.at("init"), "init");
    const auto kind = s.get<std::string>("kind");
    if (kind == "point_defect") e.init.kind = InitialSpec::Kind::PointDefect;
    else if (kind == "split_z") e.init.kind = InitialSpec::Kind::SplitZ;
    else if (kind == "uniform") e.init.kind = InitialSpec::Kind::Uniform;
    else throw ParseError("init.kind: expected point_defect|split_z|uniform, got '" + kind + "'", 0);
    e.init.s0 = s.get<double>("s0");
    e.init.center = s.vector("center");
    e.init.split = s.get<double>("split");
    e.init.direction = s.vector("direction");
    s.finish();
  }
  {
    Section f(top.at("flow"), "flow");
    FlowConfig& c = e.flow;
    c.tau_n = f.get<double>("tau_n");
    c.tau_s = f.get<double>("tau_s");
    const auto metric = f.get<std::string>("metric");
    if (metric == "l2") c.metric.kind = MetricKind::L2;
    else if (metric == "h1") c.metric.kind = MetricKind::H1Weighted;
    else throw ParseError("flow.metric: expected l2|h1, got '" + metric + "'", 0);
    c.metric.alpha = f.get<double>("alpha");
    c.tol_inner = f.get<double>("tol_inner");
    c.tol_outer = f.get<double>("tol_outer");
    c.eps_admissible = f.get<double>("eps");
    c.max_outer = f.get<int>("max_outer");
    c.max_inner = f.get<int>("max_inner");
    c.cg_tol = f.get<double>("cg_tol");
    c.cg_maxit = f.get<int>("cg_maxit");
    f.finish();
  }
  {
    Section o(top.at("output"), "output");
    rc.output.dir = o.get<std::string>("dir");
    rc.output.vtk_every = o.get<int>("vtk_every");
    if (rc.output.vtk_every < 0) throw InvalidParameter("output.vtk_every must be >= 0");
    o.finish();
  }
  top.finish();
  e.flow.validate();
  return rc;
}

json expand_config(const json& doc) {
  if (!doc.is_object()) throw ParseError("config: expected a JSON object", 0);
  const bool has_preset = doc.contains("preset");
  bool has_explicit = false;
  for (const char* key : {"mesh", "model", "init", "flow"}) has_explicit = has_explicit || doc.contains(key);
  if (has_preset == has_explicit)
    throw ParseError("config: give exactly one of 'preset' or the explicit mesh/model/init/flow blocks", 0);

  json effective;
  if (has_preset) {
    if (!doc["preset"].is_string()) throw ParseError("preset: expected a name", 0);
    for (const auto& [key, v] : doc.items())
      if (key != "preset" && key != "output") throw ParseError("unknown key " + key + " next to preset", 0);
    effective = to_json(RunConfig{preset(doc["preset"].get<std::string>()), {}});
  } else {
    RunConfig base;
    base.experiment.name = "custom";
    effective = to_json(base);
  }
  json patch = doc;
  patch.erase("preset");
  merge(effective, patch, "");
  return effective;
}

void apply_override(json& effective, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ParseError("override '" + assignment + "': expected key=value", 0);
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  if (key == "flow.tol") {
    apply_override(effective, "flow.tol_inner=" + value.dump());
    apply_override(effective, "flow.tol_outer=" + value.dump());
    return;
  }
  json* node = &effective;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part)) {
      // bc.directors takes arbitrary tag keys.
      if (node->is_object() && dot == std::string::npos && key.rfind("model.bc.directors.", 0) == 0) {
        (*node)[part] = value;
        return;
      }
      throw ParseError("override: unknown key " + key, 0);
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
}

RunConfig load_run_config(const std::string& config_path, const std::string& preset_name,
                          const std::vector<std::string>& overrides, json* effective_out) {
  if (config_path.empty() == preset_name.empty())
    throw InvalidParameter("give exactly one of --config or --preset");
  json doc;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open config " + config_path, 0);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(config_path + ": " + e.what(), 0);
    }
  } else {
    doc = {{"preset", preset_name}};
  }
  json effective;
  try {
    effective = expand_config(doc);
    for (const auto& o : overrides) apply_override(effective, o);
  } catch (const ParseError& e) {
    throw ParseError((config_path.empty() ? std::string("preset ") + preset_name : config_path) +
                         ": " + e.what(),
                     0);
  }
  RunConfig rc = run_config_from_json(effective);
  if (rc.experiment.mesh.generator == MeshSpec::Generator::Gmsh && !rc.experiment.mesh.path.empty()) {
    std::ifstream probe(rc.experiment.mesh.path);
    if (!probe) throw InvalidParameter("mesh.path: cannot open " + rc.experiment.mesh.path);
  }
  if (effective_out) *effective_out = effective;
  return rc;
}

namespace {

void banner_lines(const json& node, const std::string& prefix, std::vector<std::string>& lines) {
  for (const auto& [key, v] : node.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object() && key != "directors")
      banner_lines(v, path, lines);
    else
      lines.push_back(path + "=" + v.dump());
  }
}

}  // namespace

std::vector<std::string> config_banner(const json& effective) {
  std::vector<std::string> lines;
  banner_lines(effective, "", lines);
  return lines;
}

}  // namespace ericksen
