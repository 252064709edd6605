#include <doctest.h>

#include <cmath>
#include <random>

#include "micropolar/errors.hpp"
#include "micropolar/evaluator.hpp"
#include "micropolar/galerkin.hpp"
#include "micropolar/pointwise.hpp"
#include "micropolar/rigidity.hpp"

using namespace micropolar;

namespace {

PhysicalField constant_sym(const GridPtr& g, const Mat3& m) {
  PhysicalField f(g, Rank::symmetric);
  for (std::size_t p = 0; p < f.points(); ++p) put_sym(f, p, m);
  return f;
}

/// Smooth unit axis field tilted away from e3 by at most max_tilt radians.
PhysicalField tilted_axis(const GridPtr& g, double max_tilt, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
  const double a = ph(rng), b = ph(rng);
  PhysicalField n(g, Rank::vector);
  const int N = g->points();
  for (std::size_t p = 0; p < n.points(); ++p) {
    const double x = 2.0 * M_PI * static_cast<double>(p / (N * N)) / N;
    const double y = 2.0 * M_PI * static_cast<double>((p / N) % N) / N;
    const double z = 2.0 * M_PI * static_cast<double>(p % N) / N;
    const double tilt = max_tilt * std::sin(x + a) * std::cos(y - z);
    const double az = y + b + std::sin(z);
    put_vec(n, p, Vec3(std::sin(tilt) * std::cos(az), std::sin(tilt) * std::sin(az), std::cos(tilt)));
  }
  return n;
}

PhysicalField plus_jeq(PhysicalField k, const PhysParams& p) {
  const Mat3 jeq = equilibrium_inertia(p);
  for (std::size_t q = 0; q < k.points(); ++q) put_sym(k, q, jeq + sym_at(k, q));
  return k;
}

}  // namespace

TEST_CASE("equilibrium inertia") {
  const PhysParams p;
  const GridPtr g = Grid::make(2, 8);
  const PhysicalField j = constant_sym(g, equilibrium_inertia(p));
  const Persistence pc = spectrum_persistence_check(j, p);
  CHECK(pc.max_deviation == 0.0);
  CHECK(pc.det_deviation == 0.0);
  CHECK(pc.trace_deviation == 0.0);
  const AxisField ax = axis_field(j, p);
  CHECK(ax.reconstruction_error == 0.0);
  CHECK(ax.min_abs_n3 == 1.0);
  CHECK(ax.n.at(2, 5) == 1.0);

  const RigidityReport r = rigidity_check(PhysicalField(g, Rank::symmetric), p);
  CHECK(r.applicable);
  CHECK(r.holds);
  CHECK(r.min_margin == 0.0);
  CHECK(r.max_deviation == 0.0);
}

TEST_CASE("single tilted axis") {
  PhysParams p;
  p.nu = 3.5;
  p.lambda = 1.5;
  const double gap = p.nu - p.lambda;
  const GridPtr g = Grid::make(2, 8);
  for (double phi : {0.1, 0.5, M_PI / 4 - 0.01, M_PI / 4 + 0.01, 1.2}) {
    PhysicalField n(g, Rank::vector);
    for (std::size_t q = 0; q < n.points(); ++q) put_vec(n, q, Vec3(std::sin(phi), 0.0, std::cos(phi)));
    const PhysicalField k = inertia_from_axis(n, p);
    const Mat3 k0 = sym_at(k, 3);
    CHECK(k0.squaredNorm() == doctest::Approx(2.0 * gap * gap * std::sin(phi) * std::sin(phi)).epsilon(1e-12));
    CHECK(k0(0, 2) == doctest::Approx(gap * std::cos(phi) * std::sin(phi)).epsilon(1e-12));
    CHECK(std::abs(k0(1, 2)) < 1e-15);
    const RigidityReport r = rigidity_check(k, p);
    CHECK(r.applicable == (std::sqrt(2.0) * std::sin(phi) <= 1.0));
    CHECK((r.min_margin >= 0.0) == (std::cos(phi) * std::cos(phi) >= 0.5));
    CHECK(r.holds);
    CHECK(r.max_deviation < 1e-12);
  }
}

TEST_CASE("axis field recovers a smooth tilt") {
  PhysParams p;
  p.nu = 2.7;
  const GridPtr g = Grid::make(4, 12);
  std::mt19937_64 rng(9);
  const PhysicalField n0 = tilted_axis(g, 0.6, rng);
  const PhysicalField j = plus_jeq(inertia_from_axis(n0, p), p);
  const Persistence pc = spectrum_persistence_check(j, p);
  CHECK(pc.max_deviation < 1e-12);
  CHECK(pc.det_deviation < 1e-12);
  CHECK(pc.trace_deviation < 1e-12);
  const AxisField ax = axis_field(j, p);
  CHECK(ax.reconstruction_error < 1e-12);
  double err = 0.0, arel = 0.0;
  for (std::size_t q = 0; q < j.points(); ++q) {
    err = std::max(err, (vec_at(ax.n, q) - vec_at(n0, q)).norm());
    const Mat3 jq = sym_at(j, q);
    const Vec3 nq = vec_at(ax.n, q);
    const double a_direct = std::hypot(jq(0, 2), jq(1, 2));
    if (a_direct > 1e-8)
      arel = std::max(arel, std::abs((p.nu - p.lambda) * std::abs(nq(2)) * std::hypot(nq(0), nq(1)) - a_direct) / a_direct);
  }
  CHECK(err < 1e-12);
  CHECK(arel < 1e-10);
  CHECK(ax.a_identity_error < 1e-12);
  CHECK(ax.min_abs_n3 >= std::cos(0.6) - 1e-12);

  const RigidityReport r = rigidity_check(inertia_from_axis(n0, p), p);
  CHECK(r.applicable == (r.k_sup <= p.nu - p.lambda));
  CHECK(r.holds);

  PhysicalField broken = j;
  broken.at(0, 7) += 1e-2;
  CHECK_THROWS_AS(axis_field(broken, p), NumericError);
  CHECK(spectrum_persistence_check(broken, p).at == 7);
}

TEST_CASE("oblong axis is the smallest eigenvector") {
  const PhysParams p = PhysParams::unit_oblong();
  const GridPtr g = Grid::make(2, 8);
  std::mt19937_64 rng(10);
  const PhysicalField n0 = tilted_axis(g, 0.4, rng);
  const AxisField ax = axis_field(plus_jeq(inertia_from_axis(n0, p), p), p);
  CHECK(ax.reconstruction_error < 1e-12);
  CHECK(std::abs(ax.n.at(2, 3) - n0.at(2, 3)) < 1e-12);
}

TEST_CASE("uniform rotation factorization") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  PhysParams p;
  p.tau = 1.7;
  for (int trial = 0; trial < 5; ++trial) {
    const Vec3 th(0.3 * d(rng), 0.3 * d(rng), 0.3 * d(rng));
    const Vec3 omega = equilibrium_spin(p) + th;
    const Mat3 w = ten(omega);
    Mat3 a = Mat3::NullaryExpr([&](Eigen::Index, Eigen::Index) { return 0.1 * d(rng); });
    const Mat3 j0 = equilibrium_inertia(p) + (a + a.transpose());

    // matrix ODE J' = [Omega, J] by RK4
    Mat3 j = j0;
    const double h = 1e-3;
    auto f = [&](const Mat3& m) -> Mat3 { return commutator(w, m); };
    for (int i = 0; i < 2000; ++i) {
      const Mat3 k1 = f(j), k2 = f(j + 0.5 * h * k1), k3 = f(j + 0.5 * h * k2), k4 = f(j + h * k3);
      j += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    CHECK((j - rotated_inertia(j0, omega, 2.0)).norm() < 1e-11);

    // the perturbative K equation at u = 0 and constant theta is the same ODE
    const GridPtr g = Grid::make(2, 8);
    SpectralField thf(g, Rank::vector, 1), kf(g, Rank::symmetric, 2);
    const auto s0 = static_cast<std::size_t>(g->slot_of({0, 0, 0}));
    const Mat3 k0 = j0 - equilibrium_inertia(p);
    for (int c = 0; c < 3; ++c) thf.at(c, s0) = th(c);
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) kf.at(sym_slot(r, c), s0) = k0(r, c);
    const SpectralField lin = inertia_linear_part(thf, kf, p);
    Mat3 lhs;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) lhs(r, c) = lin.at(sym_slot(r, c), s0).real();
    lhs += commutator(ten(th), k0);
    CHECK((lhs - commutator(w, j0)).norm() < 1e-14);
  }
}
