#include <cmath>
#include <limits>
#include <stdexcept>

#include "micropolar/diagnostics.hpp"

namespace micropolar {

ResidualSeries ed_residual(const std::vector<double>& times, const std::vector<double>& energy,
                           const std::vector<double>& dissipation, const std::vector<double>& interaction) {
  const std::size_t n = times.size();
  if (energy.size() != n || dissipation.size() != n || interaction.size() != n)
    throw std::invalid_argument("ed_residual: series of different lengths");
  ResidualSeries out;
  double sq = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rate = (energy[i + 1] - energy[i - 1]) / (times[i + 1] - times[i - 1]);
    const double r = rate + dissipation[i] - interaction[i];
    out.times.push_back(times[i]);
    out.residuals.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
    sq += r * r;
  }
  if (!out.residuals.empty()) out.rms = std::sqrt(sq / static_cast<double>(out.residuals.size()));
  return out;
}

ResidualSeries ed_residual(const std::vector<EnergyReport>& reports) {
  std::vector<double> t, e, d, i;
  for (const EnergyReport& r : reports) {
    t.push_back(r.time);
    e.push_back(r.E_tilde_low);
    d.push_back(r.D_sum_low);
    i.push_back(r.I_bar_low);
  }
  return ed_residual(t, e, d, i);
}

TransportReport transport_bound_check(const std::vector<TransportSample>& samples, const PhysParams& params,
                                      double tol) {
  TransportReport out;
  if (samples.empty()) return out;
  const double rate = std::sqrt(2.0) * std::abs(params.nu - params.lambda);
  double bound = samples.front().k_norm;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0) {
      const TransportSample& a = samples[i - 1];
      const TransportSample& b = samples[i];
      bound += 0.5 * (b.time - a.time) * rate * (a.theta_bar + b.theta_bar);
    }
    out.bounds.push_back(bound);
    const double margin = bound - samples[i].k_norm;
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.worst_index = static_cast<int>(i);
    }
  }
  out.holds = out.min_margin >= -tol;
  return out;
}

TransportSample transport_sample(const State& z, double time, double p) {
  SpectralField bar(z.theta.grid_ptr(), Rank::planar, z.theta.band());
  for (int c = 0; c < 2; ++c) {
    auto src = z.theta.component(c);
    std::copy(src.begin(), src.end(), bar.component(c).begin());
  }
  return {time, norm_lp(z.K, p), norm_lp(bar, p)};
}

double coercivity_exponent(int M) {
  if (M < 2) throw std::invalid_argument("coercivity exponent needs M >= 2");
  return (2.0 * M - 2.0) / (2.0 * M - 1.0);
}

Coercivity theta_coercivity_check(const EnergyReport& r) {
  Coercivity c;
  c.theta = coercivity_exponent(r.M);
  if (!(r.D_low > 0.0) || !(r.E_bar_M > 0.0)) {
    c.flagged_zero = true;
    return c;
  }
  c.ratio = r.E_bar_low / (std::pow(r.E_bar_M, 1.0 - c.theta) * std::pow(r.D_low, c.theta));
  return c;
}

double bihari_envelope(double alpha0, double c_tilde, int M, double t, double y0) {
  if (M < 2) throw std::invalid_argument("bihari envelope needs M >= 2");
  const double beta = 2.0 * M - 2.0;
  return alpha0 * std::pow(std::pow(alpha0 / y0, 1.0 / beta) + c_tilde * t, -beta);
}

double fit_bihari_constant(const std::vector<double>& t, const std::vector<double>& e, int M, double t0,
                           double t_end) {
  if (t.size() != e.size()) throw std::invalid_argument("fit_bihari_constant: series of different lengths");
  if (M < 2) throw std::invalid_argument("bihari fit needs M >= 2");
  const double beta = 2.0 * M - 2.0;
  std::size_t i0 = 0;
  while (i0 < t.size() && t[i0] < t0) ++i0;
  if (i0 >= t.size()) throw std::invalid_argument("fit_bihari_constant: no sample at or after t0");
  const double e0 = e[i0];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = i0 + 1; i < t.size() && t[i] <= t_end; ++i) {
    const double c = (std::pow(e0 / e[i], 1.0 / beta) - 1.0) / (t[i] - t[i0]);
    best = std::min(best, c);
  }
  if (!std::isfinite(best)) throw std::invalid_argument("fit_bihari_constant: window has one sample");
  return best;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& e, double t0, double t1) {
  if (t.size() != e.size()) throw std::invalid_argument("decay_fit: series of different lengths");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1 || !(e[i] > 0.0)) continue;
    const double x = std::log1p(t[i]);
    const double y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 5) throw std::invalid_argument("decay_fit: fewer than 5 positive samples in the window");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  return {-slope, std::exp(icept), n};
}

bool non_increasing_after(const std::vector<double>& t, const std::vector<double>& e, double t0, double tol) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] < t0) continue;
    if (e[i + 1] > e[i] * (1.0 + tol)) return false;
  }
  return true;
}

}  // namespace micropolar
