// Reproduction report: one PASS/FAIL line per criterion, followed by indented detail.
// Set ERICKSEN_SLOW=1 to include the n=128 refinement row.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../properties.hpp"
#include "ericksen/fem.hpp"
#include "ericksen/flow.hpp"
#include "ericksen/presets.hpp"

using namespace ericksen;

namespace {

struct Run {
  SimplicialMesh mesh;
  FlowResult result;
  double seconds = 0.0;
  double energy() const { return result.history.back().energy; }
  double s_min() const { return result.history.back().s_min; }
  double err_n() const { return result.history.back().err_n; }
};

Run simulate(const ExperimentSpec& e) {
  const auto start = std::chrono::steady_clock::now();
  SimplicialMesh mesh = build_mesh(e.mesh, e.name);
  const DirichletNodes dn = discretize(build_dirichlet(e.bc, mesh.dim()), mesh);
  const EricksenState init = build_initial_state(mesh, e.init, dn);
  FlowResult r = outer_loop(mesh, init, e.flow, DoubleWell<>{e.c_dw}, dn);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(mesh), std::move(r), secs};
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

std::string f(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string f(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

int failures = 0;

void report(const std::string& id, bool pass, const std::string& summary, const std::vector<std::string>& detail) {
  std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), summary.c_str());
  for (const auto& d : detail) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string mark(bool ok) { return ok ? "ok" : "MISS"; }

// Shared between criteria 1, 2 and 4.
const Run& point2d_l2() {
  static const Run run = simulate(preset("point2d"));
  return run;
}

void table1_l2() {
  const Run& r = point2d_l2();
  const bool e = within(r.energy(), 2.984, 0.02);
  const bool s = within(r.s_min(), 0.0757, 0.15);
  const bool err = within(r.err_n(), 0.0404, 0.20);
  const bool n = within(r.result.outer_iterations, 60, 0.20);
  report("AC1", e && s && err && n && r.result.converged, "point2d L2 metric, n=32, tau=0.1",
         {f("E     = %.4f  target 2.984 +-2%%   %s", r.energy(), mark(e).c_str()),
          f("min s = %.4f  target 0.0757 +-15%% %s", r.s_min(), mark(s).c_str()),
          f("err_n = %.4f  target 0.0404 +-20%% %s", r.err_n(), mark(err).c_str()),
          f("N     = %d      target 60 +-20%%     %s", r.result.outer_iterations, mark(n).c_str()),
          f("max|n| = %.4f, %.1fs", r.result.history.back().n_max, r.seconds)});
}

void table1_metrics() {
  const double alphas[] = {2.0, 1.9, 1.8, 1.7};
  const double targets[] = {2.944, 2.938, 2.932, 2.926};
  std::vector<std::string> detail;
  std::vector<double> energies;
  bool all = true;
  for (int k = 0; k < 4; ++k) {
    ExperimentSpec e = preset("point2d");
    e.flow.metric = {MetricKind::H1Weighted, alphas[k]};
    const Run r = simulate(e);
    const bool ok = within(r.energy(), targets[k], 0.02) && r.result.converged;
    all = all && ok;
    energies.push_back(r.energy());
    detail.push_back(f("alpha=%.1f E=%.4f target %.3f +-2%% N=%d %s", alphas[k], r.energy(), targets[k],
                       r.result.outer_iterations, mark(ok).c_str()));
  }
  const double l2 = point2d_l2().energy();
  const bool ordered = energies[3] < energies[2] && energies[2] < energies[1] && energies[1] < energies[0] &&
                       energies[0] < l2;
  detail.push_back(f("ordering E(1.7) < E(1.8) < E(1.9) < E(2.0) < E(L2)=%.4f %s", l2, mark(ordered).c_str()));
  report("AC2", all && ordered, "point2d weighted H1 metric rows", detail);
}

void table2_tau() {
  const double targets[] = {0.00610, 0.00346, 0.001927};
  std::vector<double> errs;
  std::vector<std::string> detail;
  bool all = true;
  for (int k = 0; k < 3; ++k) {
    ExperimentSpec e = preset("point2d");
    e.flow.tau_n = 0.1 * std::pow(2.0, -(5 + k));
    e.flow.tol_inner = e.flow.tol_outer = 1e-5 * e.flow.tau_n;
    const Run r = simulate(e);
    const bool ok = within(r.err_n(), targets[k], 0.15) && r.result.converged;
    all = all && ok;
    errs.push_back(r.err_n());
    detail.push_back(f("tau_n=%.6g err_n=%.5f target %.5f +-15%% (E=%.4f N=%d %.0fs) %s", e.flow.tau_n, r.err_n(),
                       targets[k], r.energy(), r.result.outer_iterations, r.seconds, mark(ok).c_str()));
  }
  for (int k = 0; k < 2; ++k) {
    const double ratio = errs[k] / errs[k + 1];
    const bool ok = ratio >= 1.6 && ratio <= 2.0;
    all = all && ok;
    detail.push_back(f("ratio %d/%d = %.3f in [1.6, 2.0] %s", k, k + 1, ratio, mark(ok).c_str()));
  }
  report("AC3", all, "constraint violation is O(tau_n) on the n=32 mesh", detail);
}

void table2_refinement() {
  const bool slow = std::getenv("ERICKSEN_SLOW") && std::string(std::getenv("ERICKSEN_SLOW")) == "1";
  const double targets[] = {2.984, 2.940, 2.939};
  const int levels = slow ? 3 : 2;
  std::vector<std::string> detail;
  std::vector<double> smin, errs;
  bool all = true;
  for (int l = 0; l < levels; ++l) {
    ExperimentSpec e = preset("point2d");
    e.mesh.n = 32 << l;
    e.flow.tau_n = 0.1 * std::pow(2.0, -2 * l);
    std::optional<Run> fresh;
    if (l > 0) fresh = simulate(e);
    const Run& r = fresh ? *fresh : point2d_l2();
    const bool ok = within(r.energy(), targets[l], 0.02) && r.result.converged;
    all = all && ok;
    smin.push_back(r.s_min());
    errs.push_back(r.err_n());
    detail.push_back(f("n=%d tau_n=%.5g E=%.4f target %.3f +-2%% min s=%.4f err_n=%.4f (N=%d) %s", e.mesh.n,
                       e.flow.tau_n, r.energy(), targets[l], r.s_min(), r.err_n(), r.result.outer_iterations,
                       mark(ok).c_str()));
  }
  for (int l = 0; l + 1 < levels; ++l) {
    const bool dec = smin[l + 1] < smin[l] && errs[l + 1] < errs[l];
    all = all && dec;
    detail.push_back(f("level %d -> %d: min s and err_n strictly decrease %s", l, l + 1, mark(dec).c_str()));
  }
  if (!slow) detail.push_back("n=128 row skipped (set ERICKSEN_SLOW=1)");
  report("AC4", all, "mesh refinement with tau_n = 0.1 * 4^-l", detail);
}

// Vertices on the line (0.5, 0.5, z), sorted by z.
std::vector<Eigen::Index> axis_vertices(const SimplicialMesh& m) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index z = 0; z < m.num_vertices(); ++z)
    if (std::hypot(m.vertex(z)[0] - 0.5, m.vertex(z)[1] - 0.5) < 1e-9) out.push_back(z);
  std::sort(out.begin(), out.end(), [&](auto a, auto b) { return m.vertex(a)[2] < m.vertex(b)[2]; });
  return out;
}

// Largest deviation of (z_i, s_i) from its least-squares line.
double line_misfit(const std::vector<double>& z, const std::vector<double>& s) {
  Eigen::MatrixXd A(z.size(), 2);
  Eigen::VectorXd b(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = z[i];
    b[i] = s[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return (A * c - b).cwiseAbs().maxCoeff();
}

void plane_defect() {
  const Run r = simulate(preset("plane3d"));
  const bool e = within(r.energy(), 0.247, 0.05);
  const auto& st = r.result.state;
  double dev_low = 0.0, dev_high = 0.0;
  std::vector<double> zl, sl, zh, sh;
  for (Eigen::Index v : axis_vertices(r.mesh)) {
    const double z = r.mesh.vertex(v)[2];
    if (z > 0.0 && z < 0.4) {
      dev_low = std::max(dev_low, (st.n.row(v) - Eigen::RowVector3d(1, 0, 0)).cwiseAbs().maxCoeff());
      zl.push_back(z);
      sl.push_back(st.s[v]);
    } else if (z > 0.6 && z < 1.0) {
      dev_high = std::max(dev_high, (st.n.row(v) - Eigen::RowVector3d(0, 1, 0)).cwiseAbs().maxCoeff());
      zh.push_back(z);
      sh.push_back(st.s[v]);
    }
  }
  const double fit_low = line_misfit(zl, sl), fit_high = line_misfit(zh, sh);
  const bool n_ok = dev_low <= 0.05 && dev_high <= 0.05;
  const bool s_ok = fit_low <= 0.05 && fit_high <= 0.05;
  report("AC5", e && n_ok && s_ok && r.result.converged, "plane defect, cube n=20, kappa=0.2",
         {f("E = %.4f target 0.247 +-5%% %s (N=%d, %.0fs)", r.energy(), mark(e).c_str(), r.result.outer_iterations,
            r.seconds),
          f("max |n - e1| on z<0.4: %.4f, max |n - e2| on z>0.6: %.4f (<= 0.05) %s", dev_low, dev_high,
            mark(n_ok).c_str()),
          f("s line misfit: %.4f on (0,0.4), %.4f on (0.6,1) (<= 0.05) %s", fit_low, fit_high, mark(s_ok).c_str()),
          f("err_n = %.4f, max|n| = %.4f", r.err_n(), r.result.history.back().n_max)});
}

void invariants() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<props::Outcome> all = {props::energy_monotone(12, 101)};
  const auto inner = props::inner_invariants(12, 6, 202);
  all.push_back(inner.identity);
  all.push_back(inner.recursion);
  all.push_back(inner.norms);
  all.push_back(props::kkt_agreement(12, 303));
  all.push_back(props::assembly_agreement(8, 404));
  all.push_back(props::double_well_identities());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = secs < 60.0;
  std::vector<std::string> detail;
  for (const auto& o : all) {
    pass = pass && o.ok();
    detail.push_back(f("%-40s worst %.3g (tol %.3g, %d cases) %s", o.what.c_str(), o.worst, o.tol, o.cases,
                       mark(o.ok()).c_str()));
  }
  detail.push_back(f("runtime %.1fs (< 60s)", secs));
  report("AC6", pass, "randomized invariant suite", detail);
}

void cylinder() {
  ExperimentSpec line = preset("cylinder");
  const Run a = simulate(line);
  Eigen::Index at;
  const double smin = a.result.state.s.minCoeff(&at);
  const double r_at = std::hypot(a.mesh.vertex(at)[0] - 0.5, a.mesh.vertex(at)[1] - 0.5);
  const double h = a.mesh.h_max();
  const bool line_ok = smin < 0.02 && r_at <= 2 * h;

  ExperimentSpec escape = preset("cylinder");
  escape.flow.kappa = 2.0;
  escape.flow.tau_n = escape.flow.tau_s = 0.01;
  escape.init.center = Eigen::Vector3d(0.5, 0.5, 0.25);
  const Run b = simulate(escape);
  double nz = 0.0;
  for (Eigen::Index v : axis_vertices(b.mesh)) nz = std::max(nz, std::abs(b.result.state.n(v, 2)));
  const bool escape_ok = b.s_min() > 0.2 && nz >= 0.1;

  report("AC7", line_ok && escape_ok, "cylinder line defect and escape",
         {f("kappa=0.2: min s = %.3g at distance %.3g from the axis (< 0.02 within 2h = %.3g) %s (N=%d, %.0fs)", smin,
            r_at, 2 * h, mark(line_ok).c_str(), a.result.outer_iterations, a.seconds),
          f("kappa=2:   min s = %.4f (> 0.2), max |n_z| on the axis = %.3f (>= 0.1) %s (N=%d, %.0fs)", b.s_min(), nz,
            mark(escape_ok).c_str(), b.result.outer_iterations, b.seconds)});
}

}  // namespace

int main(int argc, char** argv) {
  // Optional filter: acceptance AC1 AC6 ...
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"AC1", table1_l2},   {"AC2", table1_metrics}, {"AC3", table2_tau}, {"AC4", table2_refinement},
      {"AC5", plane_defect}, {"AC6", invariants},     {"AC7", cylinder}};
  for (const auto& [id, fn] : criteria) {
    bool selected = argc == 1;
    for (int i = 1; i < argc; ++i) selected = selected || id == argv[i];
    if (!selected) continue;
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("error: ") + e.what(), {});
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
