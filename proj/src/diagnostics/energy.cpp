#include <cmath>
#include <stdexcept>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"
#include "micropolar/execution.hpp"
#include "micropolar/pointwise.hpp"

namespace micropolar {

std::string SpaceTimeIndex::label() const {
  return "t" + std::to_string(t) + "x" + std::to_string(x[0]) + std::to_string(x[1]) + std::to_string(x[2]);
}

std::vector<SpaceTimeIndex> parabolic_indices(int k, int t_min, int t_max) {
  std::vector<SpaceTimeIndex> out;
  for (int t = std::max(t_min, 0); t <= std::min(t_max, k / 2); ++t)
    for (int s = 0; s <= k - 2 * t; ++s)
      for (int i = s; i >= 0; --i)
        for (int j = s - i; j >= 0; --j) out.push_back({t, {i, j, s - i - j}});
  return out;
}

Levels time_levels(const State& z, const Evaluator& ev, int j_max) {
  Levels out{z};
  if (j_max <= 0) return out;
  for (Tangent& d : ev.derivatives(z, j_max)) out.push_back(d.as_state());
  return out;
}

namespace {

/// Sum over |alpha|_P <= k, alpha0 <= t_max of
/// 1/2|d u|^2 + 1/2 (J_eq + K) d theta . d theta + c/2 |d a|^2.
double weighted_energy(const Levels& levels, const PhysParams& params, int k, int t_max) {
  const State& z = levels.front();
  const std::size_t np = z.grid().physical_size();
  const PhysicalField kp = to_physical(z.K);
  const double cw = params.a_weight();
  const double w[3] = {std::sqrt(params.lambda), std::sqrt(params.lambda), std::sqrt(params.nu)};
  std::vector<SpectralField> u, thw, a;
  for (int t = 0; t <= std::min<int>(t_max, static_cast<int>(levels.size()) - 1); ++t) {
    const State& s = levels[static_cast<std::size_t>(t)];
    u.push_back(s.u);
    a.push_back(s.a());
    SpectralField tw = s.theta;
    for (int c = 0; c < 3; ++c)
      for (cplx& v : tw.component(c)) v *= w[c];
    thw.push_back(std::move(tw));
  }
  double acc = 0.5 * parabolic_norm_squared(u, k) + 0.5 * parabolic_norm_squared(thw, k) +
               0.5 * cw * parabolic_norm_squared(a, k);
  if (norm_linf(z.K) == 0.0) return acc;
  std::vector<double> q(np);
  for (const SpaceTimeIndex& al : parabolic_indices(k, 0, static_cast<int>(u.size()) - 1)) {
    const PhysicalField th = to_physical(derivative(levels[static_cast<std::size_t>(al.t)].theta, al.x));
    for_each_index(np, [&](std::size_t p) {
      const Vec3 v = vec_at(th, p);
      q[p] = v.dot(sym_at(kp, p) * v);
    });
    double sum = 0.0;
    for (double x : q) sum += x;
    acc += 0.5 * sum / static_cast<double>(np);
  }
  return acc;
}

}  // namespace

EnergyReport energy_report(const Levels& levels, const PhysParams& params, const ReportOptions& opt, double time) {
  if (levels.empty()) throw std::invalid_argument("energy report needs at least one level");
  if (opt.M < 1) throw ConfigError("energy level M must be at least 1");
  EnergyReport r;
  r.time = time;
  r.M = opt.M;
  const int L = static_cast<int>(levels.size()) - 1;
  r.levels_used = L;
  const int M = opt.M;

  std::vector<SpectralField> U, TH, A, KK;
  for (const State& s : levels) {
    U.push_back(s.u);
    TH.push_back(s.theta);
    A.push_back(s.a());
    KK.push_back(s.K);
  }
  auto need = [&](int level) {
    if (level > L) r.truncated = true;
    return level <= L;
  };
  auto par3 = [&](int k, int i, int j) {
    need(std::min(j, k / 2));
    return parabolic_norm_squared(U, k, i, j) + parabolic_norm_squared(TH, k, i, j) +
           parabolic_norm_squared(A, k, i, j);
  };
  auto par2 = [&](int k) {
    need(k / 2);
    return parabolic_norm_squared(U, k) + parabolic_norm_squared(TH, k);
  };
  auto h = [&](const std::vector<SpectralField>& f, int level, int s) {
    if (s < 0 || !need(level)) return 0.0;
    return norm_h_squared(f[static_cast<std::size_t>(level)], s);
  };

  r.E_bar_low = par3(2, 0, 1);
  r.E_low = r.E_bar_low + h(A, 1, 1) + h(A, 2, 0);
  r.E_bar_M = par3(2 * M, 0, M);
  if (M >= 3) {
    r.E_M_K = h(KK, 0, 2 * M - 3) + h(KK, 1, 2 * M - 3) + h(KK, 2, 2 * M - 3);
    for (int j = 3; j <= M; ++j) r.E_M_K += h(KK, j, 2 * M - 2 * j + 2);
  }
  r.E_M = r.E_bar_M + r.E_M_K;
  r.F_M = h(KK, 0, 2 * M + 1) + h(KK, 1, 2 * M) + h(KK, 2, 2 * M - 2);
  for (int i = 1; i <= M; ++i) r.K_bar.push_back(par3(2 * i, 0, 1));
  r.K_low = (M >= 2 ? r.K_bar[1] : par3(4, 0, 1)) + h(TH, 2, 0);

  const State& z = levels.front();
  r.D = dissipation(z.u, z.theta, params);
  r.D_bar_low = par2(3);
  r.D_low = r.D_bar_low + h(A, 0, 1) + h(A, 1, 0);
  r.D_bar_M = par2(2 * M + 1);
  for (int j = 0; j <= std::min(3, M); ++j) r.D_M_a += h(A, j, 2 * M - j - 1);
  for (int j = 4; j <= M; ++j) r.D_M_a += h(A, j, 2 * M - 2 * j + 3);
  r.D_M = r.D_bar_M + r.D_M_a;

  const auto low = parabolic_indices(2, 0, std::min(L, 1));
  r.E_tilde_low = weighted_energy(levels, params, 2, 1);
  r.E_tilde_M = weighted_energy(levels, params, 2 * M, L);
  for (const SpaceTimeIndex& al : low) {
    const State& lv = levels[static_cast<std::size_t>(al.t)];
    r.D_sum_low += dissipation(derivative(lv.u, al.x), derivative(lv.theta, al.x), params);
  }
  if (opt.interactions && need(2)) {
    r.interactions = interaction_terms(levels, params, low);
    for (const Interaction& it : r.interactions) r.I_bar_low += it.total;
  }
  return r;
}

EnergyReport energy_report(const State& z, const Evaluator& ev, const ReportOptions& opt, double time) {
  return energy_report(time_levels(z, ev, opt.j_max), ev.params(), opt, time);
}

std::vector<std::pair<std::string, double>> report_columns(const EnergyReport& r) {
  std::vector<std::pair<std::string, double>> c{
      {"time", r.time},       {"E_low", r.E_low},         {"E_bar_low", r.E_bar_low},
      {"E_tilde_low", r.E_tilde_low}, {"E_bar_M", r.E_bar_M}, {"E_tilde_M", r.E_tilde_M},
      {"E_M_K", r.E_M_K},     {"E_M", r.E_M},             {"F_M", r.F_M}};
  for (std::size_t i = 0; i < r.K_bar.size(); ++i) c.emplace_back("K_bar_" + std::to_string(i + 1), r.K_bar[i]);
  c.insert(c.end(), {{"K_low", r.K_low},
                     {"D", r.D},
                     {"D_bar_low", r.D_bar_low},
                     {"D_low", r.D_low},
                     {"D_bar_M", r.D_bar_M},
                     {"D_M_a", r.D_M_a},
                     {"D_M", r.D_M},
                     {"D_sum_low", r.D_sum_low},
                     {"I_bar_low", r.I_bar_low}});
  std::array<double, 8> terms{};
  for (const Interaction& it : r.interactions)
    for (std::size_t k = 0; k < 8; ++k) terms[k] += it.terms[k];
  for (std::size_t k = 0; k < 8; ++k) c.emplace_back("I" + std::to_string(k + 1), terms[k]);
  c.emplace_back("truncated", r.truncated ? 1.0 : 0.0);
  return c;
}

}  // namespace micropolar
