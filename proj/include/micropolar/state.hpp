#pragma once

#include "micropolar/fields.hpp"
#include "micropolar/params.hpp"
#include "micropolar/tensor.hpp"

namespace micropolar {

/// Perturbation (u, theta, K) of the equilibrium (0, tau~ e3, diag(lambda, lambda, nu)).
struct State {
  SpectralField u;      ///< vector, band n
  SpectralField theta;  ///< vector, band n
  SpectralField K;      ///< symmetric, band 2n in the Galerkin model

  static State zero(const GridPtr& grid, int n, int k_band);
  static State zero(const GridPtr& grid, int n) { return zero(grid, n, 2 * n); }

  const Grid& grid() const { return u.grid(); }
  int band() const { return u.band(); }
  int k_band() const { return K.band(); }

  /// Planar field (K13, K23).
  SpectralField a() const;

  State& axpy(double s, const State& o);
  State& operator*=(double s);
};

/// One time derivative of a State.
struct Tangent {
  SpectralField du;
  SpectralField dtheta;
  SpectralField dK;

  SpectralField da() const;
  State as_state() const { return {du, dtheta, dK}; }
  static Tangent from_state(State s) { return {std::move(s.u), std::move(s.theta), std::move(s.K)}; }
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
double max_abs_difference(const State& a, const State& b);
double norm_l2(const State& z);

/// Planar field (K13, K23) of a symmetric field.
SpectralField axial_column(const SpectralField& k);
/// J_eq = diag(lambda, lambda, nu) and omega_eq = tau~ e3.
Mat3 equilibrium_inertia(const PhysParams& p);
Vec3 equilibrium_spin(const PhysParams& p);

/// max over grid samples of |sorted eig(J_eq + K(x)) - sorted(lambda, lambda, nu)|.
double spectrum_deviation(const PhysicalField& K, const PhysParams& p);

/// Re-projects u (Leray, zero mean), symmetrizes Hermitian planes and
/// truncates every component to its band.
void enforce_constraints(State& z);

}  // namespace micropolar
