#include "micropolar/stress.hpp"

#include <algorithm>
#include <stdexcept>

namespace micropolar {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid_ptr() != b.grid_ptr()) throw std::invalid_argument("stress: fields live on different grids");
}

SpectralField widened(SpectralField f, int band) {
  f.widen_band(std::max(band, f.band()));
  return f;
}

void add_identity(SpectralField& m, const SpectralField& s, double c) {
  for (int i = 0; i < 3; ++i) {
    auto dst = m.component(4 * i);
    auto src = s.component(0);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += c * src[k];
  }
}

}  // namespace

SpectralField deformation(const SpectralField& v) {
  const SpectralField g = gradient(v);
  SpectralField out(v.grid_ptr(), Rank::matrix, v.band());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto dst = out.component(3 * i + j);
      auto a = g.component(3 * i + j);
      auto b = g.component(3 * j + i);
      for (std::size_t s = 0; s < dst.size(); ++s) dst[s] = a[s] + b[s];
    }
  return out;
}

SpectralField deviatoric_deformation(const SpectralField& v) {
  SpectralField out = deformation(v);
  add_identity(out, divergence(v), -2.0 / 3.0);
  return out;
}

SpectralField ten_field(const SpectralField& w) {
  if (w.rank() != Rank::vector) throw std::invalid_argument("ten_field: vector field expected");
  SpectralField out(w.grid_ptr(), Rank::matrix, w.band());
  auto set = [&](int i, int j, int c, double sign) {
    auto dst = out.component(3 * i + j);
    auto src = w.component(c);
    for (std::size_t s = 0; s < dst.size(); ++s) dst[s] = sign * src[s];
  };
  set(0, 1, 2, -1.0);
  set(0, 2, 1, 1.0);
  set(1, 0, 2, 1.0);
  set(1, 2, 0, -1.0);
  set(2, 0, 1, -1.0);
  set(2, 1, 0, 1.0);
  return out;
}

SpectralField vc_field(const SpectralField& a) {
  if (a.rank() != Rank::matrix) throw std::invalid_argument("vc_field: matrix field expected");
  SpectralField out(a.grid_ptr(), Rank::vector, a.band());
  auto set = [&](int c, int plus, int minus) {
    auto dst = out.component(c);
    auto p = a.component(plus);
    auto m = a.component(minus);
    for (std::size_t s = 0; s < dst.size(); ++s) dst[s] = 0.5 * (p[s] - m[s]);
  };
  set(0, 7, 5);
  set(1, 2, 6);
  set(2, 3, 1);
  return out;
}

SpectralField stress_tensor(const SpectralField& u, const SpectralField& p,
                            const SpectralField& omega, const PhysParams& params) {
  require_same_grid(u, p);
  require_same_grid(u, omega);
  const int band = std::max({u.band(), p.band(), omega.band()});
  SpectralField spin = 0.5 * curl(u);
  spin.widen_band(band);
  spin -= widened(omega, band);
  SpectralField t = widened(params.mu * deformation(u), band);
  t.axpy(params.kappa, ten_field(spin));
  add_identity(t, widened(p, band), -1.0);
  return t;
}

SpectralField couple_stress(const SpectralField& omega, const PhysParams& params) {
  SpectralField m = params.beta * deviatoric_deformation(omega);
  m.axpy(params.gamma, ten_field(curl(omega)));
  add_identity(m, divergence(omega), params.alpha);
  return m;
}

}  // namespace micropolar
