#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ericksen/double_well.hpp"
#include "ericksen/mesh.hpp"
#include "ericksen/model.hpp"
#include "ericksen/types.hpp"

namespace ericksen {

enum class MetricKind { L2, H1Weighted };

/// Inner product of the director flow: L2, or (h^alpha grad ., grad .) with h the
/// piecewise constant cell diameter and 0 < alpha <= 2.
struct Metric {
  MetricKind kind = MetricKind::L2;
  double alpha = 2.0;
};

struct FlowConfig {
  double kappa = 1.0;
  double tau_n = 0.1;
  double tau_s = 0.1;
  Metric metric;
  /// Absolute thresholds on successive E_1 (inner) and E (outer) differences.
  double tol_inner = 1e-6;
  double tol_outer = 1e-6;
  double eps_admissible = 0.1;
  int max_outer = 100000;
  int max_inner = 10000;
  double cg_tol = 1e-10;
  int cg_maxit = 0;

  /// Throws InvalidParameter on non-positive parameters or alpha outside (0, 2].
  void validate() const;
};

/// L2: consistent mass matrix. H1Weighted: stiffness with cell weights h_K^alpha.
CsrMatrix metric_matrix(const FlowConfig& config, const SimplicialMesh& mesh);

/// Operators of the director flow for a frozen degree of orientation s.
struct DirectorOperators {
  CsrMatrix metric;   ///< M*
  CsrMatrix elastic;  ///< kappa W(s) + K(s): E_1^h[s, n] = 1/2 sum_c n_c^T elastic n_c
  CsrMatrix system;   ///< M* + tau_n elastic
};

DirectorOperators director_operators(const SimplicialMesh& mesh, const ScalarField& s,
                                     const CsrMatrix& metric, const FlowConfig& config);

/// 1/2 sum_c n_c^T op n_c for a componentwise scalar operator.
double quadratic_form(const CsrMatrix& op, const VectorField& n);

struct InnerStep {
  VectorField t;
  VectorField n_next;
  double t_metric_sq = 0.0;   ///< |t|_*^2
  double e1_t = 0.0;          ///< E_1^h[s, t]
  int cg_iterations = 0;
};

/// One tangential update: t in T_h[n] with t = 0 on Gamma_D solving
///   (t, phi)_* + tau_n a_s(t, phi) = -a_s(n, phi)   for all phi in T_h[n],
/// where a_s is the bilinear form of `ops.elastic`; then n_next = n + tau_n t.
InnerStep inner_step(const DirectorOperators& ops, const DirichletNodes& dirichlet,
                     const VectorField& n, const FlowConfig& config);

struct InnerLoopResult {
  VectorField n;
  int count = 0;                 ///< number of updates, l_i + 1
  bool hit_limit = false;        ///< stopped by max_inner
  double metric_dissipation = 0.0;     ///< tau_n sum |t|_*^2
  double numerical_dissipation = 0.0;  ///< tau_n^2 sum E_1^h[s, t]
  std::vector<double> energies;  ///< E_1^h[s, n^{i,l}], l = 0..count
};

/// Repeats inner_step until |E_1^h[s, n^{l+1}] - E_1^h[s, n^l]| < tol_inner.
InnerLoopResult inner_loop(const SimplicialMesh& mesh, const ScalarField& s,
                           const VectorField& n_start, const CsrMatrix& metric,
                           const DirichletNodes& dirichlet, const FlowConfig& config);

/// Degree-of-orientation step with convex splitting: s_new = g_h on Gamma_D and
///   (s_new - s_old)/tau_s + kappa (|n|^2 grad s_new, grad w) + (|grad n|^2 s_new, w)
///     + (c_dw psi_c'(s_new), w) = (c_dw psi_e'(s_old), w)   for all w in V_{h,D}.
ScalarField s_step(const SimplicialMesh& mesh, const VectorField& n_new, const ScalarField& s_old,
                   const FlowConfig& config, const DoubleWell<>& dw,
                   const DirichletNodes& dirichlet, const CsrMatrix& mass);

/// One row of the run history. Row 0 describes the initial state.
struct OuterRecord {
  int i = 0;
  double energy = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  int inner_iterations = 0;
  double dts_l2 = 0.0;        ///< |d_t s^i|_{L2}
  double err_n = 0.0;         ///< |I_h[|n^i|^2 - 1]|_{L1}
  double s_min = 0.0;
  double s_max = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  double wall_s = 0.0;
  /// tau_s |d_t s|^2 + tau_n sum_l |t|_*^2
  double flow_dissipation = 0.0;
  /// tau_s^2 E_1[d_t s, n^{i}] + tau_n^2 sum_l E_1[s^{i-1}, t]
  double numerical_dissipation = 0.0;
  bool inner_limit_hit = false;
};

using RunLog = std::vector<OuterRecord>;

struct FlowResult {
  EricksenState state;
  RunLog history;
  bool converged = false;
  bool inner_limit_hit = false;
  int outer_iterations = 0;  ///< N
  AdmissibilityReport admissibility;
};

/// Called after every outer iteration (and once for the initial state).
using FlowObserver = std::function<void(const OuterRecord&, const EricksenState&)>;

/// The alternating direction discrete gradient flow. Requires |n0(z)| = 1 and
/// Dirichlet-compatible initial data. Stops when |E^{i+1} - E^i| < tol_outer or at
/// max_outer (then converged = false).
FlowResult outer_loop(const SimplicialMesh& mesh, const EricksenState& initial,
                      const FlowConfig& config, const DoubleWell<>& dw,
                      const DirichletNodes& dirichlet, const FlowObserver& observer = {});

struct CflReport {
  double value = 0.0;     ///< tau_n h_min^-d or tau_n h_min^(2-d-alpha) |log h_min|^2
  double exponent = 0.0;  ///< power of h_min
  bool log_factor = false;
  std::string formula;
};

/// Advisory CFL-type quantity controlling the L-infinity bound of the director.
CflReport cfl_check(const FlowConfig& config, const SimplicialMesh& mesh);

struct StabilityReport {
  std::vector<double> err_over_tau_e0;  ///< err_n(j) / (tau_n E^0)
  std::vector<double> linf_excess;      ///< max_z |n^j(z)| - 1
  bool err_nondecreasing = true;
  bool norms_at_least_one = true;
  double fitted_c1 = 0.0;  ///< max_j err_n(j) / (tau_n E^0)
};

StabilityReport stability_bounds(const RunLog& history, double e0, double tau_n);

}  // namespace ericksen
