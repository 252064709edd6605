#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "micropolar/evaluator.hpp"

namespace micropolar {

/// Space-time multi-index (alpha0; alpha1, alpha2, alpha3).
struct SpaceTimeIndex {
  int t = 0;
  MultiIndex x{0, 0, 0};

  int parabolic_count() const { return 2 * t + x[0] + x[1] + x[2]; }
  std::string label() const;
  bool operator==(const SpaceTimeIndex&) const = default;
};

/// All indices with |alpha|_P <= k and t_min <= alpha0 <= t_max, time order first.
std::vector<SpaceTimeIndex> parabolic_indices(int k, int t_min = 0, int t_max = 1 << 20);

/// Z and its time derivatives: levels[j] = d^j Z / dt^j.
using Levels = std::vector<State>;
Levels time_levels(const State& z, const Evaluator& ev, int j_max);

// Dissipation.

double dissipation(const SpectralField& u, const SpectralField& theta, const PhysParams& params);
/// int T(u,0,theta):(grad u - Theta) + M(theta):grad theta by grid quadrature.
double stress_pairing(const SpectralField& u, const SpectralField& theta, const PhysParams& params);
/// D(u, theta) / ||(u, theta)||_{H^1}^2.
double coercivity_ratio(const SpectralField& u, const SpectralField& theta, const PhysParams& params);

/// Squared parabolic norm sum over |alpha|_P <= k, i <= alpha0 <= j of ||d^alpha f||^2.
/// levels[l] is d^l f / dt^l; orders without a level are skipped.
double parabolic_norm_squared(const std::vector<SpectralField>& levels, int k, int i = 0, int j = 1 << 20);

// Interactions.

struct Interaction {
  SpaceTimeIndex alpha;
  std::array<double, 8> terms{};  ///< I_1 .. I_8; I_6 .. I_8 carry the a-energy weight
  double total = 0.0;
};

/// Energy bookkeeping for one multi-index.
struct AlphaBalance {
  SpaceTimeIndex alpha;
  double energy = 0.0;       ///< 1/2|d u|^2 + 1/2 J d theta . d theta + c/2 |d a|^2
  double rate = 0.0;         ///< its exact time derivative from the next level
  double dissipation = 0.0;  ///< D(d u, d theta)
  Interaction interaction;
};

/// Needs levels up to max alpha0 + 1.
std::vector<Interaction> interaction_terms(const Levels& levels, const PhysParams& params,
                                           const std::vector<SpaceTimeIndex>& alphas);
std::vector<AlphaBalance> alpha_balances(const Levels& levels, const PhysParams& params,
                                         const std::vector<SpaceTimeIndex>& alphas);

// Energy report.

struct EnergyReport {
  double time = 0.0;
  int M = 1;
  int levels_used = 0;     ///< highest time derivative available
  bool truncated = false;  ///< some M-level term needed a higher derivative and was dropped

  double E_low = 0, E_bar_low = 0, E_tilde_low = 0;
  double E_bar_M = 0, E_tilde_M = 0, E_M_K = 0, E_M = 0, F_M = 0;
  std::vector<double> K_bar;  ///< K_bar_I for I = 1..M
  double K_low = 0;
  double D = 0, D_bar_low = 0, D_low = 0, D_bar_M = 0, D_M_a = 0, D_M = 0;
  /// Sum over |alpha|_P <= 2 of D(d u, d theta), the dissipation of the low-level balance.
  double D_sum_low = 0;
  double I_bar_low = 0;
  std::vector<Interaction> interactions;  ///< the low-level indices
};

struct ReportOptions {
  int M = 4;
  int j_max = 2;  ///< highest time derivative evaluated
  bool interactions = true;
};

EnergyReport energy_report(const Levels& levels, const PhysParams& params, const ReportOptions& opt,
                           double time = 0.0);
/// Computes the levels with `ev`; throws ConfigError when j_max exceeds the evaluator's cap.
EnergyReport energy_report(const State& z, const Evaluator& ev, const ReportOptions& opt, double time = 0.0);

/// Scalar names and values of a report in a fixed order (CSV columns).
std::vector<std::pair<std::string, double>> report_columns(const EnergyReport& r);

// Time series.

struct ResidualSeries {
  std::vector<double> times;      ///< interior snapshot times
  std::vector<double> residuals;  ///< dE/dt (centered) + D - I
  double max_abs = 0.0;
  double rms = 0.0;
};

/// Residual of the low-level balance along uniformly spaced reports.
ResidualSeries ed_residual(const std::vector<EnergyReport>& reports);
ResidualSeries ed_residual(const std::vector<double>& times, const std::vector<double>& energy,
                           const std::vector<double>& dissipation, const std::vector<double>& interaction);

struct TransportSample {
  double time = 0.0;
  double k_norm = 0.0;      ///< ||K(t)||_{L^p}
  double theta_bar = 0.0;   ///< ||(theta_1, theta_2)(t)||_{L^p}
};

struct TransportReport {
  bool holds = true;
  double min_margin = 0.0;  ///< min over snapshots of bound - ||K(t)||
  int worst_index = 0;
  std::vector<double> bounds;
};

/// ||K(t)|| <= ||K(0)|| + int_0^t sqrt(2) (nu - lambda) ||theta_bar|| ds, trapezoid in time.
TransportReport transport_bound_check(const std::vector<TransportSample>& samples, const PhysParams& params,
                                      double tol = 0.0);
TransportSample transport_sample(const State& z, double time, double p);

struct Coercivity {
  double ratio = 0.0;
  bool flagged_zero = false;  ///< D_low vanished
  double theta = 0.0;
};

/// E_bar_low / (E_bar_M^(1 - theta) D_low^theta), theta = (2M - 2) / (2M - 1).
Coercivity theta_coercivity_check(const EnergyReport& r);
double coercivity_exponent(int M);

/// alpha0 ((alpha0 / y0)^(1/beta) + C t)^(-beta), beta = 2M - 2.
double bihari_envelope(double alpha0, double c_tilde, int M, double t, double y0);
inline double bihari_envelope(double alpha0, double c_tilde, int M, double t) {
  return bihari_envelope(alpha0, c_tilde, M, t, alpha0);
}

/// Largest C such that the envelope started from (t0, E(t0)) stays above E on [t0, t_end].
double fit_bihari_constant(const std::vector<double>& t, const std::vector<double>& e, int M, double t0,
                           double t_end);

struct DecayFit {
  double exponent = 0.0;  ///< beta_hat in E ~ (1 + t)^(-beta_hat)
  double prefactor = 0.0;
  int points = 0;
};

/// Least squares of log E against log(1 + t) on [t0, t1]; needs at least 5 positive samples.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& e, double t0, double t1);

/// True when e never increases by more than tol (relative) after t0.
bool non_increasing_after(const std::vector<double>& t, const std::vector<double>& e, double t0, double tol = 0.0);

// Output.

/// One row per report, columns from report_columns.
void write_reports_csv(std::ostream& os, const std::vector<EnergyReport>& reports);
/// Reports as a JSON array, with the per-index interaction terms.
void write_reports_json(std::ostream& os, const std::vector<EnergyReport>& reports);

}  // namespace micropolar
