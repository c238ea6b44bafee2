#include <doctest.h>

#include <cmath>

#include "ericksen/error.hpp"
#include "ericksen/fem.hpp"
#include "ericksen/flow.hpp"
#include "ericksen/presets.hpp"
#include "support.hpp"

using namespace ericksen;

namespace {

struct Small {
  SimplicialMesh mesh = generate_unit_square(8);
  DirichletNodes dirichlet;
  EricksenState initial;
  ExperimentSpec spec = preset("point2d");

  Small() {
    dirichlet = discretize(build_dirichlet(spec.bc, 2), mesh);
    initial = build_initial_state(mesh, spec.init, dirichlet);
  }
};

}  // namespace

TEST_CASE("flow config validation") {
  FlowConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto edit) {
    FlowConfig f;
    edit(f);
    CHECK_THROWS_AS(f.validate(), InvalidParameter);
  };
  bad([](FlowConfig& f) { f.tau_n = 0; });
  bad([](FlowConfig& f) { f.tau_s = -1; });
  bad([](FlowConfig& f) { f.kappa = 0; });
  bad([](FlowConfig& f) { f.tol_outer = 0; });
  bad([](FlowConfig& f) { f.metric = {MetricKind::H1Weighted, 2.5}; });
  bad([](FlowConfig& f) { f.metric = {MetricKind::H1Weighted, 0.0}; });
  bad([](FlowConfig& f) { f.max_outer = 0; });
  bad([](FlowConfig& f) { f.cg_maxit = -1; });
}

TEST_CASE("metric matrices") {
  const SimplicialMesh m = generate_unit_square(4);
  FlowConfig c;
  CHECK((Eigen::MatrixXd(metric_matrix(c, m)) - Eigen::MatrixXd(assemble_mass(m))).norm() == 0.0);
  c.metric = {MetricKind::H1Weighted, 1.5};
  const double w = std::pow(std::sqrt(2.0) / 4, 1.5);
  CHECK((Eigen::MatrixXd(metric_matrix(c, m)) - w * Eigen::MatrixXd(assemble_stiffness(m))).norm() < 1e-14);
}

TEST_CASE("cfl quantity") {
  const SimplicialMesh m = generate_unit_square(32);
  FlowConfig c;
  const CflReport l2 = cfl_check(c, m);
  CHECK(l2.exponent == -2);
  CHECK(l2.value == doctest::Approx(0.1 * std::pow(std::sqrt(2.0) / 32, -2)));
  c.metric = {MetricKind::H1Weighted, 2.0};
  const CflReport h1 = cfl_check(c, m);
  CHECK(h1.log_factor);
  const double lg = std::log(std::sqrt(2.0) / 32);
  CHECK(h1.value == doctest::Approx(0.1 * std::pow(std::sqrt(2.0) / 32, -2) * lg * lg));
}

TEST_CASE("inner step stays in the tangent space and vanishes on the boundary") {
  Small p;
  const CsrMatrix metric = assemble_mass(p.mesh);
  const DirectorOperators ops = director_operators(p.mesh, p.initial.s, metric, p.spec.flow);
  const InnerStep step = inner_step(ops, p.dirichlet, p.initial.n, p.spec.flow);
  for (int z : p.dirichlet.free) CHECK(std::abs(step.t.row(z).dot(p.initial.n.row(z))) < 1e-13);
  for (int z : p.dirichlet.vertices) CHECK(step.t.row(z).norm() == 0.0);
  CHECK(step.t_metric_sq > 0.0);
  CHECK(step.e1_t == doctest::Approx(energy_elastic(p.mesh, p.initial.s, step.t, p.spec.flow.kappa)));
  CHECK(quadratic_form(ops.elastic, p.initial.n) ==
        doctest::Approx(energy_elastic(p.mesh, p.initial.s, p.initial.n, p.spec.flow.kappa)));
}

TEST_CASE("s step keeps boundary values and is unconditionally stable in s") {
  Small p;
  const CsrMatrix mass = assemble_mass(p.mesh);
  const DoubleWell<> dw{p.spec.c_dw};
  ScalarField s0 = p.initial.s;
  s0(p.dirichlet.free).setConstant(0.2);
  for (double tau : {1e-3, 1.0, 100.0}) {
    FlowConfig c = p.spec.flow;
    c.tau_s = tau;
    const ScalarField s = s_step(p.mesh, p.initial.n, s0, c, dw, p.dirichlet, mass);
    for (int z : p.dirichlet.vertices) CHECK(s[z] == kSHat);
    const double before = energy_elastic(p.mesh, s0, p.initial.n, c.kappa) + energy_potential(p.mesh, s0, dw);
    const double after = energy_elastic(p.mesh, s, p.initial.n, c.kappa) + energy_potential(p.mesh, s, dw);
    CHECK(after <= before);
  }
}

TEST_CASE("outer loop bookkeeping") {
  Small p;
  FlowConfig c = p.spec.flow;
  int calls = 0;
  const FlowResult r = outer_loop(p.mesh, p.initial, c, DoubleWell<>{p.spec.c_dw}, p.dirichlet,
                                  [&](const OuterRecord& rec, const EricksenState&) { CHECK(rec.i == calls++); });
  CHECK(r.converged);
  CHECK(calls == r.outer_iterations + 1);
  CHECK(r.history.size() == static_cast<std::size_t>(r.outer_iterations + 1));
  CHECK(std::abs(r.history.back().energy - r.history[r.history.size() - 2].energy) < c.tol_outer);
  CHECK(r.history.front().inner_iterations == 0);
  CHECK(r.history[1].inner_iterations >= 1);
  CHECK(r.admissibility.structural_ok);
  for (int z : p.dirichlet.vertices) {
    CHECK(r.state.s[z] == kSHat);
    CHECK(r.state.n.row(z) == p.dirichlet.q.row(z));
  }

  c.max_outer = 2;
  const FlowResult cut = outer_loop(p.mesh, p.initial, c, DoubleWell<>{p.spec.c_dw}, p.dirichlet);
  CHECK_FALSE(cut.converged);
  CHECK(cut.outer_iterations == 2);

  c.max_inner = 1;
  const FlowResult one = outer_loop(p.mesh, p.initial, c, DoubleWell<>{p.spec.c_dw}, p.dirichlet);
  CHECK(one.inner_limit_hit);
}

TEST_CASE("stability report") {
  RunLog log(3);
  log[0].err_n = 0.0;
  log[1].err_n = 0.01;
  log[2].err_n = 0.02;
  for (auto& r : log) r.n_min = r.n_max = 1.0;
  log[2].n_max = 1.3;
  const StabilityReport rep = stability_bounds(log, 10.0, 0.1);
  CHECK(rep.err_nondecreasing);
  CHECK(rep.norms_at_least_one);
  CHECK(rep.fitted_c1 == doctest::Approx(0.02));
  CHECK(rep.linf_excess.back() == doctest::Approx(0.3));
  log[2].err_n = 0.005;
  log[1].n_min = 0.9;
  const StabilityReport worse = stability_bounds(log, 10.0, 0.1);
  CHECK_FALSE(worse.err_nondecreasing);
  CHECK_FALSE(worse.norms_at_least_one);
}
