#include "micropolar/state.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace micropolar {

State State::zero(const GridPtr& grid, int n, int k_band) {
  return {SpectralField(grid, Rank::vector, n), SpectralField(grid, Rank::vector, n),
          SpectralField(grid, Rank::symmetric, k_band)};
}

SpectralField axial_column(const SpectralField& k) {
  if (k.rank() != Rank::symmetric) throw std::invalid_argument("axial_column: symmetric field expected");
  SpectralField a(k.grid_ptr(), Rank::planar, k.band());
  auto c13 = k.component(sym_slot(0, 2));
  auto c23 = k.component(sym_slot(1, 2));
  std::copy(c13.begin(), c13.end(), a.component(0).begin());
  std::copy(c23.begin(), c23.end(), a.component(1).begin());
  return a;
}

SpectralField State::a() const { return axial_column(K); }
SpectralField Tangent::da() const { return axial_column(dK); }

State& State::axpy(double s, const State& o) {
  u.axpy(s, o.u);
  theta.axpy(s, o.theta);
  K.axpy(s, o.K);
  return *this;
}

State& State::operator*=(double s) {
  u *= s;
  theta *= s;
  K *= s;
  return *this;
}

State operator+(State a, const State& b) { return a.axpy(1.0, b); }
State operator-(State a, const State& b) { return a.axpy(-1.0, b); }

double max_abs_difference(const State& a, const State& b) {
  double m = 0.0;
  auto scan = [&](const SpectralField& x, const SpectralField& y) {
    const auto dx = x.data();
    const auto dy = y.data();
    for (std::size_t i = 0; i < dx.size(); ++i) m = std::max(m, std::abs(dx[i] - dy[i]));
  };
  scan(a.u, b.u);
  scan(a.theta, b.theta);
  scan(a.K, b.K);
  return m;
}

double norm_l2(const State& z) {
  return std::sqrt(norm_l2_squared(z.u) + norm_l2_squared(z.theta) + norm_l2_squared(z.K));
}

Mat3 equilibrium_inertia(const PhysParams& p) { return Vec3(p.lambda, p.lambda, p.nu).asDiagonal(); }
Vec3 equilibrium_spin(const PhysParams& p) { return {0.0, 0.0, p.tau_tilde()}; }

double spectrum_deviation(const PhysicalField& K, const PhysParams& p) {
  Vec3 target(p.lambda, p.lambda, p.nu);
  std::sort(target.data(), target.data() + 3);
  const Mat3 jeq = equilibrium_inertia(p);
  std::vector<double> dev(K.points(), 0.0);
  for_each_index(K.points(), [&](std::size_t q) {
    Mat3 j = jeq;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) j(a, b) += K.at(sym_slot(a, b), q);
    Eigen::SelfAdjointEigenSolver<Mat3> es(j, Eigen::EigenvaluesOnly);
    dev[q] = (es.eigenvalues() - target).cwiseAbs().maxCoeff();
  });
  return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

void enforce_constraints(State& z) {
  z.u = leray_project(project_modes(z.u, z.u.band()));
  remove_mean(z.u);
  z.theta = project_modes(z.theta, z.theta.band());
  z.K = project_modes(z.K, z.K.band());
  hermitian_symmetrize(z.u);
  hermitian_symmetrize(z.theta);
  hermitian_symmetrize(z.K);
}

}  // namespace micropolar
