#pragma once

#include <cmath>
#include <random>

#include "micropolar/fields.hpp"
#include "micropolar/params.hpp"

namespace testing_support {

using namespace micropolar;

inline SpectralField random_field(const GridPtr& g, Rank rank, int band, std::mt19937_64& rng,
                                  double amplitude = 1.0, bool keep_mean = true) {
  std::normal_distribution<double> d(0.0, 1.0);
  SpectralField f(g, rank, band);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    if (!g->in_band(s, band)) continue;
    for (int c = 0; c < f.components(); ++c) f.at(c, s) = amplitude * cplx(d(rng), d(rng));
  }
  hermitian_symmetrize(f);
  if (!keep_mean) remove_mean(f);
  return f;
}

/// Coefficient of mode m including the conjugate half.
inline cplx coefficient(const SpectralField& f, int c, std::array<int, 3> m) {
  const auto s = f.grid().slot_of(m);
  if (s >= 0) return f.at(c, static_cast<std::size_t>(s));
  const auto t = f.grid().slot_of({-m[0], -m[1], -m[2]});
  if (t < 0) return 0.0;
  return std::conj(f.at(c, static_cast<std::size_t>(t)));
}

inline double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& z : f.data()) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// D(u, theta) assembled from explicit gradient entries.
inline double dissipation_oracle(const SpectralField& u, const SpectralField& th, const PhysParams& p) {
  const SpectralField gu = gradient(u);
  const SpectralField gt = gradient(th);
  const SpectralField dt = divergence(th);
  SpectralField du(u.grid_ptr(), Rank::matrix, u.band());
  SpectralField d0(u.grid_ptr(), Rank::matrix, u.band());
  for (std::size_t s = 0; s < u.grid().spectral_size(); ++s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        du.at(3 * i + j, s) = gu.at(3 * i + j, s) + gu.at(3 * j + i, s);
        d0.at(3 * i + j, s) = gt.at(3 * i + j, s) + gt.at(3 * j + i, s) - (i == j ? 2.0 / 3.0 : 0.0) * dt.at(0, s);
      }
  SpectralField w = curl(u);
  w *= 0.5;
  w -= th;
  return 0.5 * p.mu * norm_l2_squared(du) + 2.0 * p.kappa * norm_l2_squared(w) + p.alpha * norm_l2_squared(dt) +
         0.5 * p.beta * norm_l2_squared(d0) + p.gamma * norm_l2_squared(curl(th));
}

}  // namespace testing_support
