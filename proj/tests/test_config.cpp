#include <doctest.h>

#include <fstream>

#include "ericksen/config.hpp"
#include "ericksen/error.hpp"
#include "support.hpp"

using namespace ericksen;
using nlohmann::json;

TEST_CASE("every preset survives a JSON round trip") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    RunConfig rc{preset(name), {"somewhere", 3}};
    const json j = to_json(rc);
    const RunConfig back = run_config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.experiment.flow.kappa == rc.experiment.flow.kappa);
    CHECK(back.output.vtk_every == 3);
  }
}

TEST_CASE("strict parsing names the offending key") {
  json j = to_json(RunConfig{preset("point2d"), {}});
  json extra = j;
  extra["flow"]["tau"] = 0.1;
  CHECK_THROWS_WITH_AS(run_config_from_json(extra), doctest::Contains("flow.tau"), ParseError);
  json wrong = j;
  wrong["model"]["kappa"] = "two";
  CHECK_THROWS_WITH_AS(run_config_from_json(wrong), doctest::Contains("model.kappa"), ParseError);
  json missing = j;
  missing["mesh"].erase("n");
  CHECK_THROWS_WITH_AS(run_config_from_json(missing), doctest::Contains("mesh.n"), ParseError);
  json metric = j;
  metric["flow"]["metric"] = "h2";
  CHECK_THROWS_AS(run_config_from_json(metric), ParseError);
  json alpha = j;
  alpha["flow"]["metric"] = "h1";
  alpha["flow"]["alpha"] = 3.0;
  CHECK_THROWS_AS(run_config_from_json(alpha), InvalidParameter);
}

TEST_CASE("preset and explicit blocks are exclusive") {
  CHECK_THROWS_AS(expand_config(json{{"preset", "point2d"}, {"flow", {{"tau_n", 0.2}}}}), ParseError);
  CHECK_THROWS_AS(expand_config(json::object()), ParseError);
  CHECK_THROWS_AS(expand_config(json{{"preset", "point2d"}, {"bogus", 1}}), ParseError);
  CHECK_THROWS_AS(expand_config(json{{"preset", "nope"}}), InvalidParameter);

  const json with_output = expand_config(json{{"preset", "plane3d"}, {"output", {{"dir", "x"}}}});
  CHECK(with_output["output"]["dir"] == "x");
  CHECK(with_output["model"]["kappa"] == 0.2);

  const json custom = expand_config(json{{"mesh", {{"generator", "cube"}, {"n", 3}}},
                                         {"model", {{"bc", {{"kind", "per_tag"}, {"directors", {{"1", {0, 0, 1}}}}}},
                                                    {"dirichlet_tags", {1}}}},
                                         {"init", {{"kind", "uniform"}, {"direction", {1, 0, 0}}}}});
  const RunConfig rc = run_config_from_json(custom);
  CHECK(rc.experiment.mesh.generator == MeshSpec::Generator::Cube);
  CHECK(rc.experiment.bc.directors.at(1) == Eigen::Vector3d(0, 0, 1));
  CHECK(rc.experiment.flow.tau_n == FlowConfig{}.tau_n);
  CHECK_THROWS_AS(expand_config(json{{"mesh", {{"generatr", "cube"}}}}), ParseError);
}

TEST_CASE("overrides") {
  json j = expand_config(json{{"preset", "point2d"}});
  apply_override(j, "flow.tau_n=0.05");
  apply_override(j, "flow.metric=h1");
  apply_override(j, "flow.tol=1e-8");
  apply_override(j, "init.center=[0.3,0.3]");
  apply_override(j, "output.dir=some dir");
  CHECK(j["flow"]["tau_n"] == 0.05);
  CHECK(j["flow"]["metric"] == "h1");
  CHECK(j["flow"]["tol_inner"] == 1e-8);
  CHECK(j["flow"]["tol_outer"] == 1e-8);
  CHECK(j["output"]["dir"] == "some dir");
  const RunConfig rc = run_config_from_json(j);
  CHECK(rc.experiment.flow.metric.kind == MetricKind::H1Weighted);
  CHECK(rc.experiment.init.center == Eigen::Vector2d(0.3, 0.3));

  CHECK_THROWS_AS(apply_override(j, "flow.tau_m=1"), ParseError);
  CHECK_THROWS_AS(apply_override(j, "flow"), ParseError);
  CHECK_THROWS_AS(apply_override(j, "=3"), ParseError);

  json plane = expand_config(json{{"preset", "plane3d"}});
  apply_override(plane, "model.bc.directors.7=[0,0,1]");
  CHECK(run_config_from_json(plane).experiment.bc.directors.at(7) == Eigen::Vector3d(0, 0, 1));
}

TEST_CASE("banner lines are overrides that reproduce the configuration") {
  for (const auto& name : preset_names()) {
    json effective = expand_config(json{{"preset", name}});
    apply_override(effective, "output.dir=\"123\"");
    json rebuilt = expand_config(json{{"preset", name}});
    for (const auto& line : config_banner(effective)) apply_override(rebuilt, line);
    CHECK(rebuilt == effective);
  }
}

TEST_CASE("load_run_config sources") {
  const auto dir = support::scratch_dir("config");
  const std::string path = (dir / "run.json").string();
  std::ofstream(path) << R"({"preset": "cylinder", "output": {"vtk_every": 5}})";
  json effective;
  const RunConfig rc = load_run_config(path, "", {"model.kappa=2"}, &effective);
  CHECK(rc.experiment.flow.kappa == 2.0);
  CHECK(rc.output.vtk_every == 5);
  CHECK(effective["model"]["kappa"] == 2.0);

  CHECK_THROWS_AS(load_run_config(path, "point2d", {}), InvalidParameter);
  CHECK_THROWS_AS(load_run_config("", "", {}), InvalidParameter);
  CHECK_THROWS_AS(load_run_config((dir / "absent.json").string(), "", {}), ParseError);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS_AS(load_run_config((dir / "broken.json").string(), "", {}), ParseError);
  CHECK_THROWS_WITH_AS(load_run_config("", "saturn-two", {"mesh.path=/nonexistent.msh"}),
                       doctest::Contains("mesh.path"), InvalidParameter);
}
