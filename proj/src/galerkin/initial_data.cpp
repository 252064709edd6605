#include <cmath>
#include <random>
#include <sstream>

#include "micropolar/errors.hpp"
#include "micropolar/galerkin.hpp"

namespace micropolar {

namespace {

SpectralField random_band(const GridPtr& g, Rank rank, int band, double envelope, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  SpectralField f(g, rank, band);
  for (std::size_t s = 0; s < g->spectral_size(); ++s) {
    if (!g->in_band(s, band)) continue;
    const auto& m = g->mode(s);
    const double m2 = double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
    const double w = envelope > 0.0 ? std::exp(-m2 / (2.0 * envelope * envelope)) : 1.0;
    for (int c = 0; c < f.components(); ++c) {
      const double re = d(rng);
      const double im = d(rng);
      f.at(c, s) = w * cplx(re, im);
    }
  }
  hermitian_symmetrize(f);
  return f;
}

/// Scales f so that its largest pointwise magnitude on the grid is `amplitude`.
void normalize_sup(SpectralField& f, double amplitude) {
  const double sup = norm_linf(f);
  f *= sup > 0.0 ? amplitude / sup : 0.0;
}

PhysicalField axis_samples(const SpectralField& w) {
  const PhysicalField pw = to_physical(w);
  PhysicalField axis(w.grid_ptr(), Rank::vector);
  for_each_index(pw.points(), [&](std::size_t p) {
    Vec3 v(pw.at(0, p), pw.at(1, p), 1.0 + pw.at(2, p));
    v.normalize();
    for (int i = 0; i < 3; ++i) axis.at(i, p) = v(i);
  });
  return axis;
}

}  // namespace

PhysicalField inertia_from_axis(const PhysicalField& axis, const PhysParams& params) {
  PhysicalField k(axis.grid_ptr(), Rank::symmetric);
  const Mat3 jeq = equilibrium_inertia(params);
  for_each_index(axis.points(), [&](std::size_t p) {
    const Vec3 n(axis.at(0, p), axis.at(1, p), axis.at(2, p));
    const Mat3 nn = n * n.transpose();
    const Mat3 j = params.nu * nn + params.lambda * (Mat3::Identity() - nn) - jeq;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) k.at(sym_slot(a, b), p) = j(a, b);
  });
  return k;
}

InitialData initial_data(const InitialSpec& spec, const PhysParams& params, const GalerkinConfig& cfg,
                         const GridPtr& grid) {
  params.validate();
  cfg.validate();
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude)) throw ConfigError("amplitude must be non-negative");
  const int n = cfg.n;
  const int kb = 2 * n;
  if (kb > grid->capacity()) throw ConfigError("grid capacity below 2n");
  InitialData out;
  out.state = State::zero(grid, n, kb);
  if (spec.amplitude == 0.0) return out;
  std::mt19937_64 rng(spec.seed);

  if (spec.kind == InitialKind::single_mode) {
    const auto slot = grid->slot_of(spec.mode);
    const int mb = std::max({std::abs(spec.mode[0]), std::abs(spec.mode[1]), std::abs(spec.mode[2])});
    if (slot < 0 || mb > n || mb == 0) throw ConfigError("single-mode wavenumber must be nonzero, in band n and have m3 >= 0");
    std::normal_distribution<double> d(0.0, 1.0);
    const auto s = static_cast<std::size_t>(slot);
    auto put = [&](SpectralField& f, int c) { f.at(c, s) = cplx(d(rng), d(rng)); };
    for (int c = 0; c < 3; ++c) put(out.state.u, c);
    for (int c = 0; c < 3; ++c) put(out.state.theta, c);
    put(out.state.K, sym_slot(0, 2));
    put(out.state.K, sym_slot(1, 2));
    out.state.u = leray_project(out.state.u);
    double big = 0.0;
    for (const auto* f : {&out.state.u, &out.state.theta, &out.state.K})
      for (const auto& c : f->data()) big = std::max(big, std::abs(c));
    out.state *= spec.amplitude / big;
    enforce_constraints(out.state);
  } else {
    if (spec.kind == InitialKind::random_band) {
      SpectralField u = leray_project(random_band(grid, Rank::vector, n, spec.envelope, rng));
      remove_mean(u);
      normalize_sup(u, spec.amplitude);
      SpectralField th = random_band(grid, Rank::vector, n, spec.envelope, rng);
      normalize_sup(th, spec.amplitude);
      out.state.u = std::move(u);
      out.state.theta = std::move(th);
    }
    const int ab = spec.axis_band > 0 ? spec.axis_band : std::max(1, n / 2);
    if (ab > n) throw ConfigError("axis band must not exceed n");
    SpectralField w = random_band(grid, Rank::vector, ab, spec.envelope, rng);
    normalize_sup(w, spec.amplitude);
    const PhysicalField kx = inertia_from_axis(axis_samples(w), params);
    out.spectrum_deviation_exact = spectrum_deviation(kx, params);
    out.state.K = to_spectral(kx, Rank::symmetric, kb);
    hermitian_symmetrize(out.state.K);
    out.spectrum_deviation_projected = spectrum_deviation(to_physical(out.state.K), params);
  }
  out.k_sup = norm_linf(out.state.K);
  const double limit = std::min(0.5 * std::min(params.lambda, params.nu), std::abs(params.nu - params.lambda));
  if (!(out.k_sup < limit)) {
    std::ostringstream os;
    os << "amplitude " << spec.amplitude << " too large: sup|K0| = " << out.k_sup << " must stay below " << limit;
    throw ConfigError(os.str());
  }
  return out;
}

}  // namespace micropolar
