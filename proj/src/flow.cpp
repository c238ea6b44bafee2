#include "ericksen/flow.hpp"

#include <chrono>
#include <cmath>

#include "ericksen/error.hpp"
#include "ericksen/fem.hpp"
#include "ericksen/linalg.hpp"

namespace ericksen {

void FlowConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidParameter(std::string("flow: ") + name + " must be positive");
  };
  positive(kappa, "kappa");
  positive(tau_n, "tau_n");
  positive(tau_s, "tau_s");
  positive(tol_inner, "tol_inner");
  positive(tol_outer, "tol_outer");
  positive(eps_admissible, "eps");
  positive(cg_tol, "cg_tol");
  if (metric.kind == MetricKind::H1Weighted && !(metric.alpha > 0.0 && metric.alpha <= 2.0))
    throw InvalidParameter("flow: alpha must lie in (0, 2]");
  if (max_outer < 1 || max_inner < 1) throw InvalidParameter("flow: iteration limits must be >= 1");
  if (cg_maxit < 0) throw InvalidParameter("flow: cg_maxit must be >= 0");
}

CsrMatrix metric_matrix(const FlowConfig& config, const SimplicialMesh& mesh) {
  if (config.metric.kind == MetricKind::L2) return assemble_mass(mesh);
  const Eigen::VectorXd w = mesh.h_cells().array().pow(config.metric.alpha);
  return assemble_stiffness_weighted(mesh, w);
}

DirectorOperators director_operators(const SimplicialMesh& mesh, const ScalarField& s,
                                     const CsrMatrix& metric, const FlowConfig& config) {
  DirectorOperators ops;
  ops.metric = metric;
  ops.elastic = config.kappa * assemble_gradsq_mass(mesh, s) + assemble_s2_stiffness(mesh, s);
  ops.system = metric + config.tau_n * ops.elastic;
  return ops;
}

double quadratic_form(const CsrMatrix& op, const VectorField& n) {
  return 0.5 * (n.array() * (op * n).array()).sum();
}

InnerStep inner_step(const DirectorOperators& ops, const DirichletNodes& dirichlet,
                     const VectorField& n, const FlowConfig& config) {
  const TangentBasis basis = build_tangent_basis(n, dirichlet.free);
  const VectorField rhs = -(ops.elastic * n);
  const ReducedSolveResult solved =
      reduced_solve(ops.system, basis, rhs, CgOptions{config.cg_tol, config.cg_maxit});

  InnerStep step;
  step.t = solved.t;
  step.n_next = n + config.tau_n * step.t;
  step.t_metric_sq = 2.0 * quadratic_form(ops.metric, step.t);
  step.e1_t = quadratic_form(ops.elastic, step.t);
  step.cg_iterations = solved.iterations;
  return step;
}

InnerLoopResult inner_loop(const SimplicialMesh& mesh, const ScalarField& s,
                           const VectorField& n_start, const CsrMatrix& metric,
                           const DirichletNodes& dirichlet, const FlowConfig& config) {
  const DirectorOperators ops = director_operators(mesh, s, metric, config);
  InnerLoopResult out;
  out.n = n_start;
  out.energies.push_back(quadratic_form(ops.elastic, out.n));
  while (true) {
    InnerStep step = inner_step(ops, dirichlet, out.n, config);
    out.n = std::move(step.n_next);
    out.metric_dissipation += config.tau_n * step.t_metric_sq;
    out.numerical_dissipation += config.tau_n * config.tau_n * step.e1_t;
    out.energies.push_back(quadratic_form(ops.elastic, out.n));
    ++out.count;
    const double change = std::abs(out.energies.back() - out.energies[out.energies.size() - 2]);
    if (change < config.tol_inner) break;
    if (out.count >= config.max_inner) {
      out.hit_limit = true;
      break;
    }
  }
  return out;
}

ScalarField s_step(const SimplicialMesh& mesh, const VectorField& n_new, const ScalarField& s_old,
                   const FlowConfig& config, const DoubleWell<>& dw,
                   const DirichletNodes& dirichlet, const CsrMatrix& mass) {
  check_field(mesh, s_old);
  check_field(mesh, n_new);
  const CsrMatrix system = (1.0 / config.tau_s + dw.implicit_coefficient()) * mass +
                           config.kappa * assemble_nsq_stiffness(mesh, n_new) +
                           assemble_gradnsq_mass(mesh, n_new);
  Eigen::VectorXd rhs = (mass * s_old) / config.tau_s;
  if (dw.c_dw != 0.0) rhs += assemble_load(mesh, s_old, [&](double v) { return dw.eprime(v); });

  // Lift the Dirichlet values and solve for the free correction.
  ScalarField s = ScalarField::Zero(mesh.num_vertices());
  for (int z : dirichlet.vertices) s[z] = dirichlet.g[z];
  const Eigen::VectorXd residual = rhs - system * s;

  const auto& free = dirichlet.free;
  const Eigen::Index nf = static_cast<Eigen::Index>(free.size());
  if (nf == 0) return s;
  Eigen::VectorXd b(nf), diag(nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    b[i] = residual[free[i]];
    diag[i] = system.coeff(free[i], free[i]);
  }
  Eigen::VectorXd full(mesh.num_vertices()), image(mesh.num_vertices());
  auto apply = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
    full.setZero();
    for (Eigen::Index i = 0; i < nf; ++i) full[free[i]] = y[i];
    image.noalias() = system * full;
    for (Eigen::Index i = 0; i < nf; ++i) out[i] = image[free[i]];
  };
  const CgResult cg = cg_solve(apply, diag, b, CgOptions{config.cg_tol, config.cg_maxit});
  for (Eigen::Index i = 0; i < nf; ++i) s[free[i]] = cg.x[i];
  return s;
}

namespace {

OuterRecord describe(const SimplicialMesh& mesh, const EricksenState& st, const FlowConfig& config,
                     const DoubleWell<>& dw, int i) {
  OuterRecord rec;
  rec.i = i;
  rec.e1 = energy_elastic(mesh, st.s, st.n, config.kappa);
  rec.e2 = energy_potential(mesh, st.s, dw);
  rec.energy = rec.e1 + rec.e2;
  rec.err_n = unit_length_error(mesh, st.n);
  rec.s_min = st.s.minCoeff();
  rec.s_max = st.s.maxCoeff();
  const Eigen::VectorXd norms = st.n.rowwise().norm();
  rec.n_min = norms.minCoeff();
  rec.n_max = norms.maxCoeff();
  return rec;
}

}  // namespace

FlowResult outer_loop(const SimplicialMesh& mesh, const EricksenState& initial,
                      const FlowConfig& config, const DoubleWell<>& dw,
                      const DirichletNodes& dirichlet, const FlowObserver& observer) {
  config.validate();
  check_field(mesh, initial.s);
  check_field(mesh, initial.n);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const CsrMatrix mass = assemble_mass(mesh);
  const CsrMatrix metric =
      config.metric.kind == MetricKind::L2 ? mass : metric_matrix(config, mesh);

  FlowResult result;
  result.state = initial;
  OuterRecord rec = describe(mesh, result.state, config, dw, 0);
  rec.wall_s = elapsed();
  result.history.push_back(rec);
  if (observer) observer(rec, result.state);

  for (int i = 0; i < config.max_outer; ++i) {
    const EricksenState& cur = result.state;
    InnerLoopResult inner = inner_loop(mesh, cur.s, cur.n, metric, dirichlet, config);
    ScalarField s_next = s_step(mesh, inner.n, cur.s, config, dw, dirichlet, mass);

    const ScalarField dts = (s_next - cur.s) / config.tau_s;
    const double dts_sq = l2_inner(mass, dts, dts);
    const double e1_dts = energy_elastic(mesh, dts, inner.n, config.kappa);

    const double previous = result.history.back().energy;
    result.state = EricksenState{std::move(s_next), std::move(inner.n)};
    rec = describe(mesh, result.state, config, dw, i + 1);
    rec.inner_iterations = inner.count;
    rec.dts_l2 = std::sqrt(dts_sq);
    rec.flow_dissipation = config.tau_s * dts_sq + inner.metric_dissipation;
    rec.numerical_dissipation =
        config.tau_s * config.tau_s * e1_dts + inner.numerical_dissipation;
    rec.inner_limit_hit = inner.hit_limit;
    rec.wall_s = elapsed();
    result.history.push_back(rec);
    result.inner_limit_hit = result.inner_limit_hit || inner.hit_limit;
    result.outer_iterations = i + 1;
    if (observer) observer(rec, result.state);

    if (std::abs(rec.energy - previous) < config.tol_outer) {
      result.converged = true;
      break;
    }
  }
  result.admissibility = check_admissibility(mesh, result.state, config.eps_admissible);
  return result;
}

CflReport cfl_check(const FlowConfig& config, const SimplicialMesh& mesh) {
  CflReport rep;
  const double h = mesh.h_min();
  const int d = mesh.dim();
  if (config.metric.kind == MetricKind::L2) {
    rep.exponent = -d;
    rep.value = config.tau_n * std::pow(h, rep.exponent);
    rep.formula = "tau_n * h_min^-" + std::to_string(d);
  } else {
    rep.exponent = 2.0 - d - config.metric.alpha;
    rep.log_factor = true;
    const double lg = std::log(h);
    rep.value = config.tau_n * std::pow(h, rep.exponent) * lg * lg;
    rep.formula = "tau_n * h_min^(2-d-alpha) * |log h_min|^2";
  }
  return rep;
}

StabilityReport stability_bounds(const RunLog& history, double e0, double tau_n) {
  StabilityReport rep;
  const double scale = tau_n * e0;
  for (std::size_t j = 0; j < history.size(); ++j) {
    const auto& row = history[j];
    const double ratio = scale > 0.0 ? row.err_n / scale : 0.0;
    rep.err_over_tau_e0.push_back(ratio);
    rep.linf_excess.push_back(row.n_max - 1.0);
    rep.fitted_c1 = std::max(rep.fitted_c1, ratio);
    if (row.n_min < 1.0 - 1e-12) rep.norms_at_least_one = false;
    if (j > 0 && row.err_n < history[j - 1].err_n - 1e-14 * (1.0 + history[j - 1].err_n))
      rep.err_nondecreasing = false;
  }
  return rep;
}

}  // namespace ericksen
