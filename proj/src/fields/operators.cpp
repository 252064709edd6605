#include <stdexcept>
#include <string>

#include "micropolar/errors.hpp"
#include "micropolar/fields.hpp"

namespace micropolar {

namespace {

constexpr cplx I{0.0, 1.0};

void check_rank(const SpectralField& f, Rank r, const char* what) {
  if (f.rank() != r) throw std::invalid_argument(std::string(what) + ": wrong tensor rank");
}

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid_ptr(), f.rank());
  const int nc = f.components();
  const Grid& g = f.grid();
  if (default_exec() == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) g.inverse(f.component(c).data(), out.component(c).data());
  } else {
    for (int c = 0; c < nc; ++c) g.inverse(f.component(c).data(), out.component(c).data());
  }
  return out;
}

PhysicalField to_physical_partial(const SpectralField& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("to_physical_partial: axis out of range");
  PhysicalField out(f.grid_ptr(), f.rank());
  const int nc = f.components();
  const Grid& g = f.grid();
  if (default_exec() == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) g.inverse_partial(f.component(c).data(), axis, out.component(c).data());
  } else {
    for (int c = 0; c < nc; ++c) g.inverse_partial(f.component(c).data(), axis, out.component(c).data());
  }
  return out;
}

PhysicalField to_physical_gradient(const SpectralField& v) {
  check_rank(v, Rank::vector, "to_physical_gradient");
  PhysicalField out(v.grid_ptr(), Rank::matrix);
  const Grid& g = v.grid();
  if (default_exec() == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < 9; ++c) g.inverse_partial(v.component(c / 3).data(), c % 3, out.component(c).data());
  } else {
    for (int c = 0; c < 9; ++c) g.inverse_partial(v.component(c / 3).data(), c % 3, out.component(c).data());
  }
  return out;
}

SpectralField to_spectral(const PhysicalField& samples, Rank rank, int band) {
  if (samples.components() != components(rank))
    throw std::invalid_argument("to_spectral: component count does not match rank");
  SpectralField out(samples.grid_ptr(), rank, band);
  const Grid& g = samples.grid();
  const int nc = out.components();
  if (default_exec() == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) g.forward(samples.component(c).data(), out.component(c).data(), band);
  } else {
    for (int c = 0; c < nc; ++c) g.forward(samples.component(c).data(), out.component(c).data(), band);
  }
  return out;
}

SpectralField to_spectral(std::span<const double> samples, const GridPtr& grid, Rank rank,
                          int band) {
  const std::size_t expected = grid->physical_size() * static_cast<std::size_t>(components(rank));
  if (samples.size() != expected)
    throw ConfigError("sample count " + std::to_string(samples.size()) +
                      " does not match grid (expected " + std::to_string(expected) + ")");
  PhysicalField p(grid, rank);
  std::copy(samples.begin(), samples.end(), p.data().begin());
  return to_spectral(p, rank, band);
}

SpectralField project_modes(const SpectralField& f, int m) {
  if (m > f.grid().capacity()) throw ConfigError("projection band exceeds grid capacity");
  SpectralField out(f.grid_ptr(), f.rank(), std::min(m, f.band()));
  const Grid& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    auto dst = out.component(c);
    for (std::size_t s = 0; s < g.spectral_size(); ++s)
      if (g.in_band(s, m)) dst[s] = src[s];
  }
  return out;
}

SpectralField leray_project(const SpectralField& v) {
  check_rank(v, Rank::vector, "leray_project");
  SpectralField out = v;
  const Grid& g = v.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const double k2 = g.k2(s);
    if (k2 == 0.0) return;
    const auto k = g.wavevector(s);
    const cplx kv = k[0] * v.at(0, s) + k[1] * v.at(1, s) + k[2] * v.at(2, s);
    for (int i = 0; i < 3; ++i) out.at(i, s) = v.at(i, s) - k[i] * kv / k2;
  });
  return out;
}

void hermitian_symmetrize(SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.points();
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const auto& m = g.mode(s);
    const bool self_conjugate = m[2] == 0 || (n % 2 == 0 && 2 * m[2] == n);
    if (!self_conjugate) continue;
    std::array<int, 3> mc{-m[0], -m[1], m[2]};
    for (int c = 0; c < 2; ++c)
      if (2 * std::abs(mc[c]) == n) mc[c] = m[c];
    const auto t = g.slot_of(mc);
    if (t < 0) continue;
    const auto sc = static_cast<std::size_t>(t);
    if (sc < s) continue;
    for (int c = 0; c < f.components(); ++c) {
      const cplx avg = 0.5 * (f.at(c, s) + std::conj(f.at(c, sc)));
      f.at(c, s) = avg;
      f.at(c, sc) = std::conj(avg);
    }
  }
}

SpectralField symmetric_part(const SpectralField& m) {
  check_rank(m, Rank::matrix, "symmetric_part");
  SpectralField out(m.grid_ptr(), Rank::symmetric, m.band());
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      auto dst = out.component(sym_slot(i, j));
      auto a = m.component(3 * i + j);
      auto b = m.component(3 * j + i);
      for (std::size_t s = 0; s < dst.size(); ++s) dst[s] = 0.5 * (a[s] + b[s]);
    }
  return out;
}

SpectralField derivative(const SpectralField& f, const MultiIndex& alpha) {
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("derivative: negative multi-index");
  SpectralField out(f.grid_ptr(), f.rank(), f.band());
  const Grid& g = f.grid();
  const int band = f.band();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    if (!g.in_band(s, band)) return;
    const auto k = g.wavevector(s);
    cplx sym = 1.0;
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < alpha[j]; ++r) sym *= I * k[j];
    for (int c = 0; c < f.components(); ++c) out.at(c, s) = sym * f.at(c, s);
  });
  return out;
}

std::array<SpectralField, 3> partials(const SpectralField& f) {
  return {derivative(f, {1, 0, 0}), derivative(f, {0, 1, 0}), derivative(f, {0, 0, 1})};
}

SpectralField gradient(const SpectralField& v) {
  check_rank(v, Rank::vector, "gradient");
  SpectralField out(v.grid_ptr(), Rank::matrix, v.band());
  const Grid& g = v.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.at(3 * i + j, s) = I * k[j] * v.at(i, s);
  });
  return out;
}

SpectralField gradient_scalar(const SpectralField& f) {
  check_rank(f, Rank::scalar, "gradient_scalar");
  SpectralField out(f.grid_ptr(), Rank::vector, f.band());
  const Grid& g = f.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    for (int j = 0; j < 3; ++j) out.at(j, s) = I * k[j] * f.at(0, s);
  });
  return out;
}

SpectralField divergence(const SpectralField& v) {
  check_rank(v, Rank::vector, "divergence");
  SpectralField out(v.grid_ptr(), Rank::scalar, v.band());
  const Grid& g = v.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    out.at(0, s) = I * (k[0] * v.at(0, s) + k[1] * v.at(1, s) + k[2] * v.at(2, s));
  });
  return out;
}

SpectralField divergence_rows(const SpectralField& a) {
  check_rank(a, Rank::matrix, "divergence_rows");
  SpectralField out(a.grid_ptr(), Rank::vector, a.band());
  const Grid& g = a.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    for (int i = 0; i < 3; ++i)
      out.at(i, s) =
          I * (k[0] * a.at(3 * i, s) + k[1] * a.at(3 * i + 1, s) + k[2] * a.at(3 * i + 2, s));
  });
  return out;
}

SpectralField curl(const SpectralField& v) {
  check_rank(v, Rank::vector, "curl");
  SpectralField out(v.grid_ptr(), Rank::vector, v.band());
  const Grid& g = v.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    out.at(0, s) = I * (k[1] * v.at(2, s) - k[2] * v.at(1, s));
    out.at(1, s) = I * (k[2] * v.at(0, s) - k[0] * v.at(2, s));
    out.at(2, s) = I * (k[0] * v.at(1, s) - k[1] * v.at(0, s));
  });
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out(f.grid_ptr(), f.rank(), f.band());
  const Grid& g = f.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    for (int c = 0; c < f.components(); ++c) out.at(c, s) = -g.k2(s) * f.at(c, s);
  });
  return out;
}

SpectralField inverse_laplacian(const SpectralField& f) {
  SpectralField out(f.grid_ptr(), f.rank(), f.band());
  const Grid& g = f.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    if (g.k2(s) == 0.0) return;
    for (int c = 0; c < f.components(); ++c) out.at(c, s) = -f.at(c, s) / g.k2(s);
  });
  return out;
}

SpectralField mean_mode(const SpectralField& f) { return project_modes(f, 0); }

void remove_mean(SpectralField& f) {
  for (int c = 0; c < f.components(); ++c) f.at(c, 0) = 0.0;
}

}  // namespace micropolar
