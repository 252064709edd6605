#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "micropolar/errors.hpp"
#include "micropolar/galerkin.hpp"

namespace micropolar {

void GalerkinConfig::validate() const {
  if (n < 1) throw ConfigError("band n must be at least 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (snapshot_every < 1) throw ConfigError("snapshot_every must be at least 1");
  if (!(cg_tol > 0.0) || cg_tol >= 1.0) throw ConfigError("cg_tol must lie in (0, 1)");
  if (!(blowup_threshold > 0.0)) throw ConfigError("blowup_threshold must be positive");
  if (points != 0 && points < 5 * n + 1)
    throw ConfigError("points = " + std::to_string(points) + " cannot resolve band " + std::to_string(n) +
                      " products; need at least " + std::to_string(5 * n + 1));
}

int GalerkinConfig::resolved_points() const { return points != 0 ? points : Grid::fft_friendly(5 * n + 1); }

GridPtr GalerkinConfig::make_grid() const {
  validate();
  return Grid::make(2 * n, resolved_points(), shape);
}

struct Integrator::Factors {
  double dt = 0.0;
  std::vector<double> u_full, u_half;
  std::vector<Mat3> th_full, th_half;
};

Integrator::Integrator(const PhysParams& params, const GalerkinConfig& cfg)
    : params_(params),
      cfg_(cfg),
      evaluator_(cfg.closure == Closure::galerkin ? galerkin_evaluator(params, cfg.cg_tol)
                                                  : Evaluator(params, Closure::continuous)) {
  cfg_.validate();
}

State Integrator::apply_linear(const State& z) const {
  State out = State::zero(z.u.grid_ptr(), z.band(), z.k_band());
  const Grid& g = z.grid();
  const double nu_u = params_.velocity_diffusion();
  const double gd = params_.alpha_tilde() - params_.gamma_tilde();
  const double gt = params_.gamma_tilde();
  const double jinv[3] = {1.0 / params_.lambda, 1.0 / params_.lambda, 1.0 / params_.nu};
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    const double k2 = g.k2(s);
    for (int i = 0; i < 3; ++i) out.u.at(i, s) = -nu_u * k2 * z.u.at(i, s);
    const cplx kt = k[0] * z.theta.at(0, s) + k[1] * z.theta.at(1, s) + k[2] * z.theta.at(2, s);
    for (int i = 0; i < 3; ++i) out.theta.at(i, s) = jinv[i] * (-gt * k2 * z.theta.at(i, s) - gd * k[i] * kt);
  });
  return out;
}

void Integrator::propagate(State& z, const Factors& f, bool half) const {
  const Grid& g = z.grid();
  const auto& eu = half ? f.u_half : f.u_full;
  const auto& et = half ? f.th_half : f.th_full;
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    for (int i = 0; i < 3; ++i) z.u.at(i, s) *= eu[s];
    const Mat3& e = et[s];
    const cplx t[3] = {z.theta.at(0, s), z.theta.at(1, s), z.theta.at(2, s)};
    for (int i = 0; i < 3; ++i) z.theta.at(i, s) = e(i, 0) * t[0] + e(i, 1) * t[1] + e(i, 2) * t[2];
  });
}

State Integrator::step(const State& z, double dt) const {
  State next = cfg_.stepper == Stepper::rk4 ? rk4(z, dt) : lawson(z, dt);
  enforce_constraints(next);
  return next;
}

State Integrator::rk4(const State& z, double dt) const {
  const State k1 = evaluator_.rhs(z).as_state();
  const State k2 = evaluator_.rhs(State(z).axpy(0.5 * dt, k1)).as_state();
  const State k3 = evaluator_.rhs(State(z).axpy(0.5 * dt, k2)).as_state();
  const State k4 = evaluator_.rhs(State(z).axpy(dt, k3)).as_state();
  State out = z;
  out.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
  return out;
}

const Integrator::Factors& Integrator::factors(double dt, const Grid& g) const {
  for (const auto& f : cache_)
    if (f->dt == dt) return *f;
  auto f = std::make_shared<Factors>();
  f->dt = dt;
  const std::size_t ns = g.spectral_size();
  f->u_full.resize(ns);
  f->u_half.resize(ns);
  f->th_full.resize(ns);
  f->th_half.resize(ns);
  const double nu_u = params_.velocity_diffusion();
  const double gd = params_.alpha_tilde() - params_.gamma_tilde();
  const double gt = params_.gamma_tilde();
  const Vec3 jinv(1.0 / params_.lambda, 1.0 / params_.lambda, 1.0 / params_.nu);
  for_each_index(ns, [&](std::size_t s) {
    const auto kk = g.wavevector(s);
    const Vec3 k(kk[0], kk[1], kk[2]);
    const double k2 = g.k2(s);
    f->u_full[s] = std::exp(-nu_u * k2 * dt);
    f->u_half[s] = std::exp(-nu_u * k2 * 0.5 * dt);
    const Mat3 a = jinv.asDiagonal() * (-gt * k2 * Mat3::Identity() - gd * k * k.transpose());
    f->th_full[s] = (a * dt).exp();
    f->th_half[s] = (a * (0.5 * dt)).exp();
  });
  cache_.push_back(std::move(f));
  return *cache_.back();
}

State Integrator::lawson(const State& z, double dt) const {
  const Factors& fac = factors(dt, z.grid());
  auto nonlinear = [&](const State& x) {
    State n = evaluator_.rhs(x).as_state();
    n.axpy(-1.0, apply_linear(x));
    return n;
  };
  auto E = [&](State x, bool half) {
    propagate(x, fac, half);
    return x;
  };

  const State k1 = nonlinear(z);
  const State k2 = nonlinear(E(State(z).axpy(0.5 * dt, k1), true));
  const State k3 = nonlinear(E(z, true).axpy(0.5 * dt, k2));
  const State k4 = nonlinear(E(z, false).axpy(dt, E(k3, true)));

  State out = E(z, false);
  out.axpy(dt / 6.0, E(k1, false));
  out.axpy(dt / 3.0, E(k2 + k3, true));
  out.axpy(dt / 6.0, k4);
  return out;
}

void Integrator::guard(const State& z, double t) const {
  for (const auto* f : {&z.u, &z.theta, &z.K})
    for (const auto& c : f->data())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        std::ostringstream os;
        os << "non-finite coefficient at t = " << t;
        throw NumericError(os.str());
      }
  const double h3 = norm_h(z.K, 3);
  if (h3 > cfg_.blowup_threshold) {
    std::ostringstream os;
    os << "blow-up guard: ||K||_H3 = " << h3 << " exceeds " << cfg_.blowup_threshold << " at t = " << t;
    throw BlowupError(os.str());
  }
}

State Integrator::simulate(const State& z0, const Observer& observe) const {
  const long steps = std::lround(cfg_.t_end / cfg_.dt);
  State z = z0;
  enforce_constraints(z);
  if (observe) observe(0, 0.0, z);
  int index = 1;
  for (long s = 1; s <= steps; ++s) {
    z = step(z, cfg_.dt);
    const double t = static_cast<double>(s) * cfg_.dt;
    guard(z, t);
    if (observe && (s % cfg_.snapshot_every == 0 || s == steps)) observe(index++, t, z);
  }
  return z;
}

State step(const State& z, const PhysParams& params, const GalerkinConfig& cfg) {
  return Integrator(params, cfg).step(z, cfg.dt);
}

Trajectory simulate(const State& z0, const PhysParams& params, const GalerkinConfig& cfg) {
  Trajectory out;
  Integrator(params, cfg).simulate(z0, [&](int, double t, const State& z) {
    out.times.push_back(t);
    out.states.push_back(z);
  });
  return out;
}

Snapshot to_snapshot(const State& z, double time) {
  Snapshot s;
  s.time = time;
  s.fields = {{"u", z.u}, {"theta", z.theta}, {"K", z.K}};
  return s;
}

State from_snapshot(const Snapshot& snap) {
  State z{snap.get("u"), snap.get("theta"), snap.get("K")};
  if (z.u.rank() != Rank::vector || z.theta.rank() != Rank::vector || z.K.rank() != Rank::symmetric)
    throw ConfigError("snapshot fields have unexpected ranks");
  return z;
}

}  // namespace micropolar
