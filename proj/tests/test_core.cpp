#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "micropolar/errors.hpp"
#include "micropolar/evaluator.hpp"
#include "micropolar/galerkin.hpp"
#include "micropolar/stress.hpp"
#include "support.hpp"

using namespace micropolar;
using namespace testing_support;

namespace {

Mat3 random_mat(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = d(rng);
  return m;
}

Vec3 random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  return {d(rng), d(rng), d(rng)};
}

Mat3 random_sym(std::mt19937_64& rng) { return sym(random_mat(rng)); }

GridPtr small_grid(int n = 2) { return Grid::make(2 * n, Grid::fft_friendly(5 * n + 1)); }

State random_state(const GridPtr& g, int n, std::mt19937_64& rng, double amp) {
  State z;
  z.u = leray_project(random_field(g, Rank::vector, n, rng, amp, false));
  z.theta = random_field(g, Rank::vector, n, rng, amp);
  z.K = random_field(g, Rank::symmetric, 2 * n, rng, amp);
  return z;
}

// Scales coefficients so that sup norms stay near `amp`; random coefficients otherwise add up.
State damped_state(const GridPtr& g, int n, std::mt19937_64& rng, double amp) {
  State z = random_state(g, n, rng, 1.0);
  auto damp = [&](SpectralField& f) {
    for (std::size_t s = 0; s < g->spectral_size(); ++s) {
      const double w = std::exp(-g->k2(s) / (4.0 * std::pow(2.0 * std::numbers::pi, 2)));
      for (int c = 0; c < f.components(); ++c) f.at(c, s) *= w;
    }
    f *= amp / norm_linf(f);
  };
  damp(z.u);
  damp(z.theta);
  damp(z.K);
  return z;
}

// f'(x) = R f(R^T x) for the quarter turn R about e3, acting on tensor indices as given.
SpectralField rotate(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr(), f.rank(), f.band());
  Mat3 r;
  r << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const auto& m = g.mode(s);
    // Coefficient of out at mode m is f's coefficient at R^T m.
    const std::array<int, 3> src{m[1], -m[0], m[2]};
    if (f.rank() == Rank::vector) {
      Eigen::Vector3cd v;
      for (int i = 0; i < 3; ++i) v(i) = coefficient(f, i, src);
      const Eigen::Vector3cd w = r.cast<cplx>() * v;
      for (int i = 0; i < 3; ++i) out.at(i, s) = w(i);
    } else if (f.rank() == Rank::symmetric) {
      Eigen::Matrix3cd a;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = coefficient(f, sym_slot(i, j), src);
      const Eigen::Matrix3cd b = r.cast<cplx>() * a * r.transpose().cast<cplx>();
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) out.at(sym_slot(i, j), s) = b(i, j);
    } else {
      for (int c = 0; c < f.components(); ++c) out.at(c, s) = coefficient(f, c, src);
    }
  }
  return out;
}


}  // namespace

TEST_CASE("commutator identities on random matrices") {
  std::mt19937_64 rng(11);
  double e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0;
  for (int t = 0; t < 1000; ++t) {
    const Mat3 s = random_sym(rng);
    const Vec3 w = random_vec(rng);
    const Vec3 v = random_vec(rng);
    const Mat3 a = ten(w);
    const Mat3 m = random_mat(rng);
    e1 = std::max(e1, (0.5 * commutator(a, s) - sym(a * s)).cwiseAbs().maxCoeff());
    e2 = std::max(e2, std::abs(frobenius_inner(commutator(m, s), s)) / (m.norm() * s.squaredNorm()));
    e3 = std::max(e3, (commutator_block_form(w, s) - commutator(a, s)).cwiseAbs().maxCoeff());
    e4 = std::max(e4, (vc(a) - w).cwiseAbs().maxCoeff());
    e5 = std::max(e5, (a * v - w.cross(v)).cwiseAbs().maxCoeff());
  }
  CHECK(e1 < 1e-14);
  CHECK(e2 < 1e-14);
  CHECK(e3 < 1e-14);
  CHECK(e4 == 0.0);
  CHECK(e5 < 1e-14);
}

TEST_CASE("block form at the equilibrium inertia") {
  const PhysParams p;
  const Mat3 jeq = equilibrium_inertia(p);
  CHECK(commutator_block_form(Vec3::UnitZ(), jeq).cwiseAbs().maxCoeff() == 0.0);
  Mat3 expect = Mat3::Zero();
  // ten(e1) has entries (2,1) = 1 and (1,2) = -1; commuting with diag(1,1,2) gives +-(nu - lambda).
  expect(1, 2) = -(p.nu - p.lambda);
  expect(2, 1) = -(p.nu - p.lambda);
  CHECK((commutator_block_form(Vec3::UnitX(), jeq) - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((commutator(ten(Vec3::UnitX()), jeq) - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("precession decomposition") {
  std::mt19937_64 rng(5);
  PhysParams p;
  p.tau = 1.7;
  const Mat3 jeq = equilibrium_inertia(p);
  const Vec3 weq = equilibrium_spin(p);
  double err = 0;
  for (int t = 0; t < 200; ++t) {
    const Mat3 k = 0.3 * random_sym(rng);
    const Vec3 th = random_vec(rng);
    const Mat3 j = jeq + k;
    const Vec3 lhs = (weq + th).cross(j * (weq + th));
    const Vec3 rhs = (weq + th).cross(j * th) + th.cross(j * weq) +
                     p.tau_tilde() * p.tau_tilde() * perp_lift(axial_column(k));
    err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  CHECK(err < 1e-13);
}

TEST_CASE("parameters") {
  const PhysParams p;
  CHECK(p.alpha_tilde() == doctest::Approx(1.0 + 4.0 / 3.0));
  CHECK(p.gamma_tilde() == 2.0);
  CHECK(p.tau_tilde() == 0.5);
  CHECK(p.oblate());
  CHECK_FALSE(PhysParams::unit_oblong().oblate());
  CHECK(p.a_weight() == doctest::Approx(0.25));

  PhysParams bad;
  bad.gamma = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = PhysParams{};
  bad.nu = bad.lambda;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  const std::string good = "mu: 1\nkappa: 2\nalpha: 1\nbeta: 1\ngamma: 1\ntau: 3\nlambda: 1\nnu: 2\n";
  const PhysParams q = parse_params(good, "p.yaml");
  CHECK(q.kappa == 2.0);
  CHECK(q.tau_tilde() == 0.75);

  auto message = [](const std::string& text) {
    try {
      parse_params(text, "p.yaml");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(good + "sigma: 1\n").find("p.yaml:9") != std::string::npos);
  CHECK(message(good + "sigma: 1\n").find("unknown parameter 'sigma'") != std::string::npos);
  CHECK(message(good + "mu: 2\n").find("duplicate key 'mu'") != std::string::npos);
  CHECK(message("mu: 1\n").find("missing parameter 'kappa'") != std::string::npos);
  CHECK(message("mu: 1\nkappa: fast\n").find("p.yaml:2") != std::string::npos);
  CHECK(message("mu: [1\n").find("p.yaml:") != std::string::npos);
  CHECK(message("mu: -1\nkappa: 2\nalpha: 1\nbeta: 1\ngamma: 1\ntau: 3\nlambda: 1\nnu: 2\n").find("'mu'") !=
        std::string::npos);
}

TEST_CASE("stress tensors") {
  const PhysParams p;
  const GridPtr g = Grid::make(3, 10);
  SpectralField u(g, Rank::vector, 3), pr(g, Rank::scalar, 3), omega(g, Rank::vector, 3);
  const auto zero = g->slot_of({0, 0, 0});
  const Vec3 c(0.3, -1.2, 0.7);
  for (int i = 0; i < 3; ++i) omega.at(i, static_cast<std::size_t>(zero)) = c(i);

  const SpectralField t = stress_tensor(u, pr, omega, p);
  const SpectralField v = vc_field(t);
  for (int i = 0; i < 3; ++i) CHECK(v.at(i, static_cast<std::size_t>(zero)).real() == doctest::Approx(-p.kappa * c(i)));
  const Mat3 tc = -p.kappa * ten(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(t.at(3 * i + j, static_cast<std::size_t>(zero)).real() == doctest::Approx(tc(i, j)));
  CHECK(max_abs(couple_stress(omega, p)) == 0.0);

  std::mt19937_64 rng(3);
  u = leray_project(random_field(g, Rank::vector, 3, rng, 1.0, false));
  pr = random_field(g, Rank::scalar, 3, rng);
  omega = random_field(g, Rank::vector, 3, rng);
  const SpectralField t2 = stress_tensor(u, pr, omega, p);
  SpectralField trace(g, Rank::scalar, 3);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) trace.at(0, s) = t2.at(0, s) + t2.at(4, s) + t2.at(8, s);
  CHECK(max_abs_diff(trace, -3.0 * pr) < 1e-10 * max_abs(pr));
}

TEST_CASE("right-hand side at equilibrium and for commuting diagonal K") {
  const PhysParams p;
  const GridPtr g = small_grid();
  State z = State::zero(g, 2);
  SpectralField pr;
  const Tangent t = rhs_perturbative(z, p, &pr);
  CHECK(max_abs(t.du) == 0.0);
  CHECK(max_abs(t.dtheta) == 0.0);
  CHECK(max_abs(t.dK) == 0.0);
  CHECK(max_abs(pr) == 0.0);

  const auto zero = static_cast<std::size_t>(g->slot_of({0, 0, 0}));
  z.K.at(sym_slot(0, 0), zero) = 0.2;
  z.K.at(sym_slot(1, 1), zero) = 0.2;
  z.K.at(sym_slot(2, 2), zero) = -0.1;
  const Tangent d = rhs_perturbative(z, p);
  CHECK(max_abs(d.dK) < 1e-15);
  CHECK(max_abs(d.dtheta) < 1e-15);
}

TEST_CASE("rhs preserves constraints and matches rhs_a") {
  const PhysParams p;
  const GridPtr g = Grid::make(4, 14);
  std::mt19937_64 rng(17);
  const State z = damped_state(g, 2, rng, 0.1);
  const Tangent t = rhs_perturbative(z, p);
  CHECK(max_abs(divergence(t.du)) < 1e-12 * max_abs(t.du));
  CHECK(max_abs(mean_mode(t.du)) == 0.0);
  SpectralField h = t.dK;
  hermitian_symmetrize(h);
  CHECK(max_abs_diff(h, t.dK) < 1e-15 * max_abs(t.dK));

  const SpectralField da = rhs_a(z, p);
  CHECK(max_abs_diff(da, t.da()) <= 1e-12 * max_abs(da));

  State c = State::zero(g, 2);
  const auto zero = static_cast<std::size_t>(g->slot_of({0, 0, 0}));
  c.theta.at(0, zero) = 0.4;
  const SpectralField a = rhs_a(c, p);
  CHECK(a.at(0, zero).real() == doctest::Approx(0.0));
  CHECK(a.at(1, zero).real() == doctest::Approx(-(p.nu - p.lambda) * 0.4));
}

TEST_CASE("rotation equivariance about the torque axis") {
  PhysParams p;
  p.kappa = 0.7;
  p.tau = 1.3;
  const GridPtr g = small_grid();
  std::mt19937_64 rng(23);
  const State z = damped_state(g, 2, rng, 0.1);
  const State zr{rotate(z.u), rotate(z.theta), rotate(z.K)};
  const Tangent a = rhs_perturbative(zr, p);
  const Tangent b = rhs_perturbative(z, p);
  CHECK(max_abs_diff(a.du, rotate(b.du)) <= 1e-10 * max_abs(b.du));
  CHECK(max_abs_diff(a.dtheta, rotate(b.dtheta)) <= 1e-10 * max_abs(b.dtheta));
  CHECK(max_abs_diff(a.dK, rotate(b.dK)) <= 1e-10 * max_abs(b.dK));
}

TEST_CASE("pointwise inversion failure reports its location") {
  const PhysParams p;
  const GridPtr g = small_grid();
  State z = State::zero(g, 2);
  const auto zero = static_cast<std::size_t>(g->slot_of({0, 0, 0}));
  z.K.at(0, zero) = -0.8;
  try {
    rhs_perturbative(z, p);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("smallest eigenvalue") != std::string::npos);
  }
  CHECK_THROWS_AS(rhs_perturbative(State::zero(Grid::make(4, 10), 2), p), ConfigError);
}

TEST_CASE("temporal derivatives") {
  PhysParams p;
  for (double* v : {&p.mu, &p.kappa, &p.alpha, &p.beta, &p.gamma}) *v = 0.1;
  p.tau = 0.5;
  const GridPtr g = small_grid();
  CHECK_THROWS_AS(temporal_derivatives(State::zero(g, 2), p, 3), ConfigError);
  for (const auto& t : temporal_derivatives(State::zero(g, 2), p, 2)) {
    CHECK(max_abs(t.du) == 0.0);
    CHECK(max_abs(t.dtheta) == 0.0);
    CHECK(max_abs(t.dK) == 0.0);
  }

  std::mt19937_64 rng(29);
  const State z = damped_state(g, 2, rng, 0.1);
  const auto d = temporal_derivatives(z, p, 2);
  const Tangent r = rhs_perturbative(z, p);
  CHECK(max_abs_diff(d[0].du, r.du) == 0.0);
  CHECK(max_abs_diff(d[0].dtheta, r.dtheta) == 0.0);
  CHECK(max_abs_diff(d[0].dK, r.dK) == 0.0);

  GalerkinConfig cfg;
  cfg.n = 2;
  cfg.stepper = Stepper::rk4;
  cfg.closure = Closure::continuous;
  Integrator in(p, cfg);
  const State target = d[1].as_state();
  std::vector<double> errs;
  for (double h : {4e-3, 2e-3, 1e-3, 5e-4}) {
    const Tangent fp = rhs_perturbative(in.step(z, h), p);
    const Tangent fm = rhs_perturbative(in.step(z, -h), p);
    State fd = fp.as_state() - fm.as_state();
    fd *= 1.0 / (2.0 * h);
    errs.push_back(max_abs_difference(fd, target));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double slope = std::log2(errs[i - 1] / errs[i]);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
  }
}
