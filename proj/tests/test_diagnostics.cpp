#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"
#include "micropolar/galerkin.hpp"
#include "state_support.hpp"

using namespace micropolar;
using namespace testing_support;

namespace {

PhysParams varied_params() {
  PhysParams p;
  p.mu = 0.7;
  p.kappa = 0.8;
  p.alpha = 0.6;
  p.beta = 0.9;
  p.gamma = 1.1;
  p.tau = 1.3;
  p.nu = 2.5;
  return p;
}

GridPtr grid_for(int n) {
  GalerkinConfig cfg;
  cfg.n = n;
  return cfg.make_grid();
}

/// Translation by (s / N) along each axis, an exact grid shift.
SpectralField translate(SpectralField f, const std::array<int, 3>& shift) {
  const Grid& g = f.grid();
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const auto& m = g.mode(s);
    double ph = 0.0;
    for (int i = 0; i < 3; ++i) ph += 2.0 * std::numbers::pi * m[i] * shift[i] / g.points();
    for (int c = 0; c < f.components(); ++c) f.at(c, s) *= std::polar(1.0, ph);
  }
  return f;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("dissipation against the explicit oracle and the stress pairing") {
  const PhysParams p = varied_params();
  const int n = 3;
  const GridPtr g = grid_for(n);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField u = leray_project(random_field(g, Rank::vector, n, rng, 1.0, false));
    const SpectralField th = random_field(g, Rank::vector, n, rng);
    const double d = dissipation(u, th, p);
    CHECK(rel(d, dissipation_oracle(u, th, p)) < 1e-12);
    CHECK(rel(d, stress_pairing(u, th, p)) < 1e-10);
    CHECK(coercivity_ratio(u, th, p) > 0.0);
  }
  const SpectralField zero(g, Rank::vector, n);
  CHECK(dissipation(zero, zero, p) == 0.0);

  SpectralField c(g, Rank::vector, n);
  const auto s0 = static_cast<std::size_t>(g->slot_of({0, 0, 0}));
  c.at(0, s0) = 0.3;
  c.at(2, s0) = -0.4;
  CHECK(dissipation(zero, c, p) == doctest::Approx(2.0 * p.kappa * 0.25).epsilon(1e-14));
}

TEST_CASE("parabolic indices") {
  const auto low = parabolic_indices(2, 0, 1);
  CHECK(low.size() == 11);
  CHECK(low.back() == SpaceTimeIndex{1, {0, 0, 0}});
  CHECK(parabolic_indices(2, 1, 1).size() == 1);
  CHECK(parabolic_indices(8).size() == 165 + 84 + 35 + 10 + 1);
  for (const auto& a : parabolic_indices(5)) CHECK(a.parabolic_count() <= 5);
  CHECK(SpaceTimeIndex{1, {0, 2, 0}}.label() == "t1x020");
}

TEST_CASE("per-index energy balance on Galerkin levels") {
  const PhysParams p = varied_params();
  const int n = 3;
  const GridPtr g = grid_for(n);
  std::mt19937_64 rng(17);
  const State z = random_state(g, n, 2 * n, rng, 0.1);
  const Evaluator ev = galerkin_evaluator(p, 1e-14);
  const Levels lv = time_levels(z, ev, 2);
  REQUIRE(lv.size() == 3);
  const auto bal = alpha_balances(lv, p, parabolic_indices(2, 0, 1));
  REQUIRE(bal.size() == 11);
  for (const AlphaBalance& b : bal) {
    CAPTURE(b.alpha.label());
    const double scale = std::max({b.dissipation, std::abs(b.rate), std::abs(b.interaction.total)});
    CHECK(std::abs(b.rate + b.dissipation - b.interaction.total) <= 1e-8 * scale);
    CHECK(b.energy > 0.0);
  }
  const Interaction& i0 = bal.front().interaction;
  for (int k = 0; k < 7; ++k) CHECK(i0.terms[static_cast<std::size_t>(k)] == 0.0);
  CHECK(std::abs(i0.terms[7]) > 0.0);

  // the alpha = 0 interaction is c int (K_bar - K33 I) theta_bar^perp . a
  const SpectralField a = z.a();
  SpectralField tp(g, Rank::planar, n);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    tp.at(0, s) = -z.theta.at(1, s);
    tp.at(1, s) = z.theta.at(0, s);
  }
  SpectralField kb(g, Rank::symmetric, 2 * n);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    kb.at(0, s) = z.K.at(0, s) - z.K.at(5, s);
    kb.at(1, s) = z.K.at(1, s);
    kb.at(3, s) = z.K.at(3, s) - z.K.at(5, s);
  }
  SpectralField tp3(g, Rank::vector, n);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    tp3.at(0, s) = tp.at(0, s);
    tp3.at(1, s) = tp.at(1, s);
  }
  const SpectralField prod = dealiased_product(kb, tp3, 2 * n, Product::matvec);
  SpectralField a3(g, Rank::vector, 2 * n);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    a3.at(0, s) = a.at(0, s);
    a3.at(1, s) = a.at(1, s);
  }
  CHECK(rel(i0.terms[7], p.a_weight() * inner(prod, a3)) < 1e-10);
}

TEST_CASE("interaction terms need the next time level") {
  const PhysParams p;
  const GridPtr g = grid_for(2);
  const Levels lv{State::zero(g, 2)};
  CHECK_THROWS_AS(interaction_terms(lv, p, {SpaceTimeIndex{1, {0, 0, 0}}}), std::invalid_argument);
}

TEST_CASE("energy report") {
  const PhysParams p = varied_params();
  const int n = 3;
  const GridPtr g = grid_for(n);
  std::mt19937_64 rng(3);
  State z = random_state(g, n, 2 * n, rng, 0.05);
  z.K *= 0.02;
  const Evaluator ev = galerkin_evaluator(p, 1e-14);
  const Levels lv = time_levels(z, ev, 2);

  ReportOptions opt;
  opt.M = 2;
  const EnergyReport r2 = energy_report(lv, p, opt);
  CHECK_FALSE(r2.truncated);
  CHECK(r2.E_M_K == 0.0);
  const double c = p.a_weight();
  const double cE = 0.5 * std::min({1.0, p.lambda, c});
  const double CE = 0.5 * std::max({1.0, p.nu, c});
  CHECK(r2.E_tilde_low >= cE * r2.E_bar_low);
  CHECK(r2.E_tilde_low <= CE * r2.E_bar_low);
  CHECK(r2.interactions.size() == 11);
  CHECK(r2.D_sum_low > r2.D);
  CHECK(r2.K_bar.size() == 2);
  CHECK(r2.K_bar[0] == doctest::Approx(r2.E_bar_low).epsilon(1e-14));
  CHECK(r2.E_low > r2.E_bar_low);
  CHECK(r2.D_M == doctest::Approx(r2.D_bar_M + r2.D_M_a));

  opt.M = 3;
  const EnergyReport r3 = energy_report(lv, p, opt);
  CHECK(r3.truncated);
  CHECK(r3.E_M_K > 0.0);
  opt.M = 4;
  const EnergyReport r4 = energy_report(lv, p, opt);
  CHECK(r2.E_bar_M < r3.E_bar_M);
  CHECK(r3.E_bar_M < r4.E_bar_M);
  CHECK(r3.E_M < r4.E_M);
  CHECK(r4.F_M > r3.F_M);

  // invariance under a grid translation
  State zs = z;
  const std::array<int, 3> shift{3, 1, 5};
  zs.u = translate(z.u, shift);
  zs.theta = translate(z.theta, shift);
  zs.K = translate(z.K, shift);
  const EnergyReport r4s = energy_report(zs, ev, opt);
  const auto a = report_columns(r4);
  const auto b = report_columns(r4s);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(a[i].first);
    CHECK(std::abs(a[i].second - b[i].second) <= 1e-9 * std::max(std::abs(a[i].second), 1e-12));
  }

  ReportOptions bad;
  bad.j_max = 3;
  CHECK_THROWS_AS(energy_report(z, ev, bad), ConfigError);

  std::ostringstream csv, js;
  write_reports_csv(csv, {r2, r4});
  write_reports_json(js, {r2});
  CHECK(csv.str().rfind("time,E_low,", 0) == 0);
  CHECK(js.str().find("\"t0x000\"") != std::string::npos);
}

TEST_CASE("theta coercivity") {
  CHECK(coercivity_exponent(4) == doctest::Approx(6.0 / 7.0));
  const PhysParams p;
  const GridPtr g = grid_for(2);
  const Evaluator ev = galerkin_evaluator(p);
  ReportOptions opt;
  opt.M = 4;
  const EnergyReport r = energy_report(State::zero(g, 2), ev, opt);
  const Coercivity c = theta_coercivity_check(r);
  CHECK(c.flagged_zero);
  CHECK(c.ratio == 0.0);

  std::mt19937_64 rng(8);
  const EnergyReport q = energy_report(random_state(g, 2, 4, rng, 0.01), ev, opt);
  const Coercivity cq = theta_coercivity_check(q);
  CHECK_FALSE(cq.flagged_zero);
  CHECK(cq.ratio > 0.0);
}

TEST_CASE("residual, envelope and fit utilities") {
  std::vector<double> t, e, d, zero;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.01 * i);
    e.push_back(std::exp(-t.back()));
    d.push_back(std::exp(-t.back()));
    zero.push_back(0.0);
  }
  const ResidualSeries rs = ed_residual(t, e, d, zero);
  CHECK(rs.residuals.size() == 199);
  CHECK(rs.max_abs < 2e-5);
  CHECK(rs.max_abs > 1e-7);

  std::vector<double> tt, pw;
  for (int i = 0; i <= 100; ++i) {
    tt.push_back(0.2 * i);
    pw.push_back(3.0 * std::pow(1.0 + tt.back(), -6.0));
  }
  const DecayFit f = decay_fit(tt, pw, 0.0, 20.0);
  CHECK(f.exponent == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.points == 101);
  CHECK_THROWS_AS(decay_fit(tt, pw, 30.0, 40.0), std::invalid_argument);

  CHECK(bihari_envelope(2.0, 0.5, 4, 0.0) == doctest::Approx(2.0));
  CHECK(bihari_envelope(1.0, 1.0, 2, 3.0) == doctest::Approx(1.0 / 16.0));
  std::vector<double> env;
  for (double x : tt) env.push_back(bihari_envelope(0.7, 0.3, 3, x));
  CHECK(fit_bihari_constant(tt, env, 3, 0.0, 20.0) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(non_increasing_after(tt, env, 0.0));
  env[50] *= 1.5;
  CHECK_FALSE(non_increasing_after(tt, env, 0.0));
  CHECK(non_increasing_after(tt, env, 10.5));
}

TEST_CASE("transport bound") {
  PhysParams p;
  p.nu = 3.0;
  std::vector<TransportSample> s{{0.0, 1.0, 0.5}, {1.0, 1.0 + std::sqrt(2.0), 0.5}};
  const TransportReport ok = transport_bound_check(s, p);
  CHECK(ok.holds);
  CHECK(ok.bounds[1] == doctest::Approx(1.0 + 2.0 * std::sqrt(2.0) * 0.5));
  s[1].k_norm = 1.0 + 2.0 * std::sqrt(2.0) * 0.5 + 1e-3;
  const TransportReport bad = transport_bound_check(s, p);
  CHECK_FALSE(bad.holds);
  CHECK(bad.worst_index == 1);

  // pure precession keeps ||K|| fixed, so the bound holds with zero theta
  const int n = 3;
  const GridPtr g = grid_for(n);
  std::mt19937_64 rng(4);
  State z = random_state(g, n, 2 * n, rng, 0.1);
  const double k0 = norm_lp(z.K, 2.0);
  const double h = 0.01;
  auto f = [&](const SpectralField& k) { return inertia_linear_part(SpectralField(g, Rank::vector, n), k, p); };
  SpectralField k = z.K;
  for (int i = 0; i < 100; ++i) {
    const SpectralField k1 = f(k);
    const SpectralField k2 = f(k + (0.5 * h) * k1);
    const SpectralField k3 = f(k + (0.5 * h) * k2);
    const SpectralField k4 = f(k + h * k3);
    k += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  CHECK(std::abs(norm_lp(k, 2.0) - k0) < 1e-12);
  CHECK(max_abs_diff(k, z.K) > 0.1 * max_abs(z.K));

  // along a Galerkin run
  GalerkinConfig cfg;
  cfg.n = n;
  cfg.dt = 0.01;
  Integrator integ(p, cfg);
  std::vector<TransportSample> run;
  double t = 0.0;
  run.push_back(transport_sample(z, t, 2.0));
  for (int i = 0; i < 50; ++i) {
    z = integ.step(z, cfg.dt);
    t += cfg.dt;
    run.push_back(transport_sample(z, t, 2.0));
  }
  CHECK(transport_bound_check(run, p, 1e-12).holds);
}
