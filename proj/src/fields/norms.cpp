#include <cmath>
#include <stdexcept>

#include "micropolar/fields.hpp"

namespace micropolar {

double inner(const SpectralField& f, const SpectralField& g) {
  if (!f.same_shape(g)) throw std::invalid_argument("inner: field shape mismatch");
  const Grid& gr = f.grid();
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto a = f.component(c);
    auto b = g.component(c);
    double part = 0.0;
    for (std::size_t s = 0; s < gr.spectral_size(); ++s)
      part += gr.weight(s) * (a[s].real() * b[s].real() + a[s].imag() * b[s].imag());
    acc += slot_weight(f.rank(), c) * part;
  }
  return acc;
}

double norm_l2_squared(const SpectralField& f) { return inner(f, f); }

double norm_l2(const SpectralField& f) { return std::sqrt(norm_l2_squared(f)); }

double derivative_sum_weight(const std::array<double, 3>& k, int s) {
  const double x = k[0] * k[0], y = k[1] * k[1], z = k[2] * k[2];
  double total = 0.0;
  double xa = 1.0;
  for (int a = 0; a <= s; ++a) {
    double yb = 1.0;
    for (int b = 0; a + b <= s; ++b) {
      double zc = 1.0;
      for (int c = 0; a + b + c <= s; ++c) {
        total += xa * yb * zc;
        zc *= z;
      }
      yb *= y;
    }
    xa *= x;
  }
  return total;
}

double norm_h_squared(const SpectralField& f, int s, SobolevForm form) {
  if (s < 0) throw std::invalid_argument("Sobolev index must be non-negative");
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    double mag = 0.0;
    for (int c = 0; c < f.components(); ++c) mag += slot_weight(f.rank(), c) * std::norm(f.at(c, i));
    if (mag == 0.0) continue;
    const double w = form == SobolevForm::derivative_sum ? derivative_sum_weight(g.wavevector(i), s)
                                                        : std::pow(1.0 + g.k2(i), s);
    acc += g.weight(i) * w * mag;
  }
  return acc;
}

double norm_h(const SpectralField& f, int s, SobolevForm form) {
  return std::sqrt(norm_h_squared(f, s, form));
}

double norm_lp(const PhysicalField& f, double p, Rank rank) {
  const std::size_t n = f.points();
  const int nc = f.components();
  auto magnitude = [&](std::size_t i) {
    double m = 0.0;
    for (int c = 0; c < nc; ++c) m += slot_weight(rank, c) * f.at(c, i) * f.at(c, i);
    return std::sqrt(m);
  };
  if (p <= 0.0) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, magnitude(i));
    return mx;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(magnitude(i), p);
  return std::pow(acc / static_cast<double>(n), 1.0 / p);
}

double norm_lp(const SpectralField& f, double p) { return norm_lp(to_physical(f), p, f.rank()); }

double norm_linf(const SpectralField& f) { return norm_lp(f, 0.0); }

}  // namespace micropolar
