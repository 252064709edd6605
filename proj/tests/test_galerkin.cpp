#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "micropolar/errors.hpp"
#include "micropolar/galerkin.hpp"
#include "state_support.hpp"

using namespace micropolar;
using namespace testing_support;

namespace {

PhysParams slow_params() {
  PhysParams p;
  for (double* v : {&p.mu, &p.kappa, &p.alpha, &p.beta, &p.gamma}) *v = 0.1;
  p.tau = 0.5;
  return p;
}

State widen(State z, int n) {
  z.u.widen_band(n);
  z.theta.widen_band(n);
  z.K.widen_band(2 * n);
  return z;
}

}  // namespace

TEST_CASE("T_n at K = 0 scales by the equilibrium inertia") {
  const PhysParams p;
  const int n = 2;
  const GridPtr g = Grid::make(2 * n, 12);
  std::mt19937_64 rng(1);
  const SpectralField v = random_field(g, Rank::vector, n, rng);
  const TnOperator t(SpectralField(g, Rank::symmetric, 2 * n), n, p);
  const SpectralField tv = t.apply(v);
  const SpectralField iv = t.invert(v);
  const double jeq[3] = {p.lambda, p.lambda, p.nu};
  double e1 = 0, e2 = 0;
  for (std::size_t s = 0; s < g->spectral_size(); ++s)
    for (int c = 0; c < 3; ++c) {
      e1 = std::max(e1, std::abs(tv.at(c, s) - jeq[c] * v.at(c, s)));
      e2 = std::max(e2, std::abs(iv.at(c, s) - v.at(c, s) / jeq[c]));
    }
  CHECK(e1 < 1e-14);
  CHECK(e2 < 1e-14);
}

TEST_CASE("T_n single-mode product against direct convolution") {
  const PhysParams p;
  const int n = 2;
  const GridPtr g = Grid::make(2 * n, 12);
  SpectralField K(g, Rank::symmetric, 2 * n);
  SpectralField v(g, Rank::vector, n);
  const std::array<int, 3> mk{4, 0, 1}, mv{-2, 1, 1}, out{2, 1, 2};
  Eigen::Matrix3cd kc;
  kc << cplx(0.05, 0.01), cplx(-0.02, 0.03), cplx(0.01, 0.0), cplx(-0.02, 0.03), cplx(0.04, -0.02),
      cplx(0.0, 0.02), cplx(0.01, 0.0), cplx(0.0, 0.02), cplx(-0.03, 0.01);
  const Eigen::Vector3cd vc(cplx(1.0, 0.5), cplx(-0.3, 0.2), cplx(0.7, -0.1));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) K.at(sym_slot(i, j), static_cast<std::size_t>(g->slot_of(mk))) = kc(i, j);
  for (int i = 0; i < 3; ++i) v.at(i, static_cast<std::size_t>(g->slot_of(mv))) = vc(i);

  const SpectralField tv = TnOperator(K, n, p).apply(v);
  const Eigen::Vector3cd expect_out = kc * vc;
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    const auto& m = g->mode(s);
    for (int c = 0; c < 3; ++c) {
      cplx expect = 0.0;
      if (m == out) expect = expect_out(c);
      if (m == mv) expect += (c == 2 ? p.nu : p.lambda) * vc(c);
      if (!g->in_band(s, n)) CHECK(tv.at(c, s) == cplx(0.0));
      CHECK(std::abs(tv.at(c, s) - expect) < 1e-14);
    }
  }
}

TEST_CASE("T_n is self-adjoint, invertible and bounded") {
  const PhysParams p;
  const int n = 4;
  const GridPtr g = Grid::make(2 * n, Grid::fft_friendly(5 * n + 1));
  std::mt19937_64 rng(7);
  const SpectralField K = scaled_sup(random_field(g, Rank::symmetric, 2 * n, rng), 0.4 * p.lambda);
  const TnOperator t(K, n, p);
  CHECK(t.k_sup() == doctest::Approx(0.4 * p.lambda).epsilon(1e-12));

  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField v = random_field(g, Rank::vector, n, rng);
    const SpectralField w = random_field(g, Rank::vector, n, rng);
    const double a = inner(t.apply(v), w);
    const double b = inner(v, t.apply(w));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  }

  double worst_round = 0, worst_norm = 0;
  for (int trial = 0; trial < 50; ++trial) {
    SpectralField f = random_field(g, Rank::vector, n, rng);
    f *= 1.0 / norm_l2(f);
    CgStats st;
    const SpectralField x = t.invert(f, 1e-12, &st);
    CHECK(st.relative_residual <= 1e-12);
    worst_norm = std::max(worst_norm, norm_l2(x));
    const SpectralField back = t.invert(t.apply(f), 1e-12);
    worst_round = std::max(worst_round, norm_l2(back - f));
  }
  CHECK(worst_round < 1e-9);
  CHECK(worst_norm <= 2.0 / p.lambda + 1e-6);

  CHECK_THROWS_AS(TnOperator(scaled_sup(K, 0.5 * p.lambda), n, p), NumericError);
}

TEST_CASE("approximate rhs at equilibrium and against the continuous rhs") {
  const PhysParams p;
  const int n = 4;
  GalerkinConfig cfg;
  cfg.n = n;
  const GridPtr g = cfg.make_grid();
  const Tangent zero = approximate_rhs(State::zero(g, n), p);
  CHECK(max_abs(zero.du) == 0.0);
  CHECK(max_abs(zero.dtheta) == 0.0);
  CHECK(max_abs(zero.dK) == 0.0);

  std::mt19937_64 rng(13);
  State z = widen(random_state(g, n / 2, n / 2, rng, 0.05), n);
  z.K *= 0.0;
  const Tangent a = approximate_rhs(z, p, 1e-13);
  const Tangent c = rhs_perturbative(z, p);
  CHECK(max_abs_diff(a.du, c.du) <= 1e-10 * max_abs(c.du));
  CHECK(max_abs_diff(a.dtheta, c.dtheta) <= 1e-10 * max_abs(c.dtheta));
  CHECK(max_abs_diff(a.dK, c.dK) <= 1e-10 * max_abs(c.dK));

  // With K present the two closures differ, at second order in K or higher.
  const SpectralField k0 = scaled_sup(random_field(g, Rank::symmetric, n / 2, rng), 0.1);
  std::vector<double> gaps;
  for (double s : {1.0, 0.5, 0.25}) {
    State zk = z;
    zk.K = k0;
    zk.K *= s;
    zk.K.widen_band(2 * n);
    const Tangent ak = approximate_rhs(zk, p, 1e-14);
    const Tangent ck = rhs_perturbative(zk, p);
    CHECK(max_abs_diff(ak.du, ck.du) <= 1e-10 * max_abs(ck.du));
    CHECK(max_abs_diff(ak.dK, ck.dK) <= 1e-10 * max_abs(ck.dK));
    gaps.push_back(max_abs_diff(ak.dtheta, ck.dtheta));
  }
  CHECK(gaps[2] > 0.0);
  CHECK(gaps[0] / gaps[1] >= 3.6);
  CHECK(gaps[1] / gaps[2] >= 3.6);
}

TEST_CASE("semi-discrete energy identity on one evaluation") {
  PhysParams p;
  p.tau = 1.3;
  p.kappa = 0.8;
  const int n = 3;
  GalerkinConfig cfg;
  cfg.n = n;
  const GridPtr g = cfg.make_grid();
  std::mt19937_64 rng(31);
  const State z = random_state(g, n, 2 * n, rng, 0.1);
  const Tangent t = approximate_rhs(z, p, 1e-14);

  const Mat3 jeq = equilibrium_inertia(p);
  SpectralField jdt = t.dtheta;
  for (std::size_t s = 0; s < g->spectral_size(); ++s)
    for (int c = 0; c < 3; ++c) jdt.at(c, s) *= jeq(c, c);
  jdt += dealiased_product(z.K, t.dtheta, n, Product::matvec);
  const double c = p.a_weight();
  const double de = inner(z.u, t.du) + inner(z.theta, jdt) +
                    0.5 * inner(z.theta, dealiased_product(t.dK, z.theta, n, Product::matvec)) +
                    0.5 * c * inner(z.K, t.dK);
  const double d = dissipation_oracle(z.u, z.theta, p);
  CHECK(std::abs(de + d) <= 1e-8 * d);
}

TEST_CASE("zero data stays zero and constraints hold after each step") {
  const PhysParams p;
  GalerkinConfig cfg;
  cfg.n = 2;
  cfg.dt = 0.01;
  cfg.t_end = 0.05;
  cfg.snapshot_every = 1;
  const GridPtr g = cfg.make_grid();
  const Trajectory tr = simulate(State::zero(g, 2), p, cfg);
  REQUIRE(tr.states.size() == 6);
  for (const auto& s : tr.states) CHECK(norm_l2(s) == 0.0);
  CHECK(tr.times.back() == doctest::Approx(0.05));

  std::mt19937_64 rng(3);
  const State z = random_state(g, 2, 4, rng, 0.05);
  const State next = step(z, p, cfg);
  CHECK(max_abs(divergence(next.u)) < 1e-13 * max_abs(next.u));
  CHECK(max_abs(mean_mode(next.u)) == 0.0);
  CHECK(max_abs_diff(next.u, project_modes(next.u, 2)) == 0.0);
  CHECK(max_abs_diff(next.theta, project_modes(next.theta, 2)) == 0.0);
  CHECK(max_abs_diff(next.K, project_modes(next.K, 4)) == 0.0);
}

TEST_CASE("fourth-order convergence of both steppers") {
  const PhysParams p = slow_params();
  GalerkinConfig cfg;
  cfg.n = 2;
  const GridPtr g = cfg.make_grid();
  std::mt19937_64 rng(41);
  const State z0 = random_state(g, 2, 4, rng, 0.1);
  for (Stepper st : {Stepper::rk4, Stepper::if_rk4}) {
    cfg.stepper = st;
    const Integrator in(p, cfg);
    auto run = [&](int steps) {
      State z = z0;
      for (int i = 0; i < steps; ++i) z = in.step(z, 0.1 / steps);
      return z;
    };
    const State ref = run(16 * 32);
    std::vector<double> errs;
    for (int steps : {8, 16, 32}) errs.push_back(max_abs_difference(run(steps), ref));
    for (std::size_t i = 1; i < errs.size(); ++i)
      CHECK(std::log2(errs[i - 1] / errs[i]) == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("blow-up guard") {
  const PhysParams p;
  GalerkinConfig cfg;
  cfg.n = 2;
  cfg.dt = 0.01;
  cfg.t_end = 0.02;
  cfg.blowup_threshold = 1e-6;
  const GridPtr g = cfg.make_grid();
  std::mt19937_64 rng(9);
  CHECK_THROWS_AS(simulate(random_state(g, 2, 4, rng, 0.05), p, cfg), BlowupError);
}

TEST_CASE("initial data") {
  const PhysParams p;
  GalerkinConfig cfg;
  cfg.n = 4;
  const GridPtr g = cfg.make_grid();
  InitialSpec spec;
  spec.amplitude = 0.0;
  CHECK(norm_l2(initial_data(spec, p, cfg, g).state) == 0.0);

  spec.amplitude = 1e-3;
  spec.seed = 42;
  const InitialData id = initial_data(spec, p, cfg, g);
  CHECK(id.spectrum_deviation_exact <= 1e-12);
  CHECK(id.spectrum_deviation_projected <= 1e-8);
  CHECK(max_abs(divergence(id.state.u)) < 1e-15);
  CHECK(max_abs(mean_mode(id.state.u)) == 0.0);
  CHECK(norm_linf(id.state.u) == doctest::Approx(1e-3));
  CHECK(id.k_sup > 0.0);
  CHECK(id.k_sup < 0.5);

  const InitialData again = initial_data(spec, p, cfg, g);
  CHECK(max_abs_difference(again.state, id.state) == 0.0);
  spec.seed = 43;
  CHECK(max_abs_difference(initial_data(spec, p, cfg, g).state, id.state) > 0.0);

  spec.kind = InitialKind::tilt_axis;
  const InitialData tilt = initial_data(spec, p, cfg, g);
  CHECK(norm_l2(tilt.state.u) == 0.0);
  CHECK(norm_l2(tilt.state.theta) == 0.0);
  CHECK(tilt.spectrum_deviation_projected <= 1e-8);

  spec.kind = InitialKind::single_mode;
  spec.mode = {1, -2, 0};
  const InitialData one = initial_data(spec, p, cfg, g);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    const auto& m = g->mode(s);
    const bool on = m == spec.mode || m == std::array<int, 3>{-1, 2, 0};
    if (!on) CHECK(std::abs(one.state.theta.at(0, s)) == 0.0);
  }

  spec.kind = InitialKind::random_band;
  spec.amplitude = 2.0;
  CHECK_THROWS_AS(initial_data(spec, p, cfg, g), ConfigError);
}

TEST_CASE("state snapshot roundtrip") {
  GalerkinConfig cfg;
  cfg.n = 2;
  const GridPtr g = cfg.make_grid();
  std::mt19937_64 rng(2);
  const State z = random_state(g, 2, 4, rng, 0.1);
  const State back = from_snapshot(to_snapshot(z, 1.5));
  CHECK(max_abs_difference(back, z) == 0.0);
  CHECK(back.k_band() == 4);
}

TEST_CASE("serial and parallel evaluation agree") {
  const PhysParams p;
  GalerkinConfig cfg;
  cfg.n = 3;
  const GridPtr g = cfg.make_grid();
  std::mt19937_64 rng(4);
  const State z = random_state(g, 3, 6, rng, 0.05);
  set_default_exec(Exec::serial);
  const Tangent a = approximate_rhs(z, p);
  set_default_exec(Exec::parallel);
  const Tangent b = approximate_rhs(z, p);
  CHECK(max_abs_diff(a.du, b.du) <= 1e-14 * max_abs(a.du));
  CHECK(max_abs_diff(a.dtheta, b.dtheta) <= 1e-14 * max_abs(a.dtheta));
  CHECK(max_abs_diff(a.dK, b.dK) <= 1e-14 * max_abs(a.dK));
}
