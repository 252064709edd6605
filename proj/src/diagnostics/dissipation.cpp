#include <stdexcept>

#include "micropolar/diagnostics.hpp"
#include "micropolar/stress.hpp"

namespace micropolar {

double dissipation(const SpectralField& u, const SpectralField& theta, const PhysParams& params) {
  if (u.grid_ptr() != theta.grid_ptr()) throw std::invalid_argument("dissipation: fields on different grids");
  SpectralField w = curl(u);
  w *= 0.5;
  w -= theta;
  return 0.5 * params.mu * norm_l2_squared(deformation(u)) + 2.0 * params.kappa * norm_l2_squared(w) +
         params.alpha * norm_l2_squared(divergence(theta)) +
         0.5 * params.beta * norm_l2_squared(deviatoric_deformation(theta)) +
         params.gamma * norm_l2_squared(curl(theta));
}

double stress_pairing(const SpectralField& u, const SpectralField& theta, const PhysParams& params) {
  const SpectralField zero_p(u.grid_ptr(), Rank::scalar, u.band());
  const PhysicalField t = to_physical(stress_tensor(u, zero_p, theta, params));
  const PhysicalField m = to_physical(couple_stress(theta, params));
  const PhysicalField strain = to_physical(gradient(u) - ten_field(theta));
  const PhysicalField gt = to_physical(gradient(theta));
  return quadrature(t, strain) + quadrature(m, gt);
}

double coercivity_ratio(const SpectralField& u, const SpectralField& theta, const PhysParams& params) {
  const double h1 = norm_h_squared(u, 1) + norm_h_squared(theta, 1);
  if (h1 == 0.0) return 0.0;
  return dissipation(u, theta, params) / h1;
}

double parabolic_norm_squared(const std::vector<SpectralField>& levels, int k, int i, int j) {
  double acc = 0.0;
  const int top = std::min({j, k / 2, static_cast<int>(levels.size()) - 1});
  for (int t = i; t <= top; ++t) acc += norm_h_squared(levels[static_cast<std::size_t>(t)], k - 2 * t);
  return acc;
}

}  // namespace micropolar
