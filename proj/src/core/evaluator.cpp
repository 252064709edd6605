#include "micropolar/evaluator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "micropolar/errors.hpp"
#include "micropolar/pointwise.hpp"

namespace micropolar {

namespace {

constexpr cplx I{0.0, 1.0};

using Mat3c = Eigen::Matrix3cd;

double multinom(int i, int l, int m) { return factorial(i + l + m) / (factorial(i) * factorial(l) * factorial(m)); }

/// Physical samples of one temporal order of the state.
struct Samples {
  PhysicalField u, cu, th, gth, k;
  std::array<PhysicalField, 3> gk;
};

Samples sample(const State& z) {
  Samples s;
  s.u = to_physical(z.u);
  s.cu = to_physical(curl(z.u));
  s.th = to_physical(z.theta);
  s.gth = to_physical_gradient(z.theta);
  s.k = to_physical(z.K);
  for (int b = 0; b < 3; ++b) s.gk[b] = to_physical_partial(z.K, b);
  return s;
}

std::string grid_location(const Grid& g, std::size_t p) {
  const std::size_t n = static_cast<std::size_t>(g.points());
  std::ostringstream os;
  os << "grid point (" << p / (n * n) << ", " << (p / n) % n << ", " << p % n << ")";
  return os.str();
}

class Ladder {
 public:
  Ladder(const Evaluator& ev, const ThetaSolver* solver, const State& z)
      : p_(ev.params()), closure_(ev.closure()), solver_(solver) {
    require_rhs_grid(z.grid(), z.band(), z.k_band());
    if (z.theta.band() != z.band()) throw std::invalid_argument("u and theta must share a band");
    if (closure_ == Closure::galerkin && !solver_)
      throw std::invalid_argument("galerkin closure needs a theta solver");
    jeq_ = equilibrium_inertia(p_);
    weq_ = equilibrium_spin(p_);
    z_.push_back(z);
    theta_star_.emplace_back();
    if (closure_ == Closure::continuous) build_inverse(ev.options().floor_fraction);
  }

  Tangent next(SpectralField* pressure_out) {
    const int j = static_cast<int>(z_.size()) - 1;
    while (static_cast<int>(s_.size()) <= j) s_.push_back(sample(z_[s_.size()]));
    const State& zj = z_[static_cast<std::size_t>(j)];
    const GridPtr& grid = zj.u.grid_ptr();
    const Grid& g = *grid;
    const int n = z_[0].band();
    const int bk = z_[0].k_band();
    const std::size_t np = g.physical_size();

    PhysicalField nu(grid, Rank::vector), nk(grid, Rank::symmetric), nth(grid, Rank::vector);
    for_each_index(np, [&](std::size_t p) {
      Vec3 acc_u = Vec3::Zero();
      Mat3 acc_k = Mat3::Zero();
      Vec3 acc_t = Vec3::Zero();
      for (int i = 0; i <= j; ++i) {
        const double c = binom(j, i);
        const Samples& si = s_[static_cast<std::size_t>(i)];
        const Samples& sr = s_[static_cast<std::size_t>(j - i)];
        const Vec3 ui = vec_at(si.u, p);
        // Leray projection removes the gradient part of u.grad u, leaving (curl u) x u.
        acc_u += c * vec_at(sr.cu, p).cross(ui);
        Mat3 adv = Mat3::Zero();
        for (int b = 0; b < 3; ++b) adv += ui(b) * sym_at(sr.gk[b], p);
        const Mat3 kr = sym_at(sr.k, p);
        const Mat3 th = ten(vec_at(si.th, p));
        acc_k += c * (th * kr - kr * th - adv);
      }
      auto inertia = [&](int i) -> Mat3 {
        const Mat3 k = sym_at(s_[static_cast<std::size_t>(i)].k, p);
        return i == 0 ? Mat3(jeq_ + k) : k;
      };
      auto spin = [&](int i) -> Vec3 {
        const Vec3 t = vec_at(s_[static_cast<std::size_t>(i)].th, p);
        return i == 0 ? Vec3(weq_ + t) : t;
      };
      for (int i = 0; i <= j; ++i)
        for (int l = 0; l + i <= j; ++l) {
          const int m = j - i - l;
          const double c = multinom(i, l, m);
          const Vec3 ul = vec_at(s_[static_cast<std::size_t>(l)].u, p);
          acc_t -= c * (inertia(i) * (mat_at(s_[static_cast<std::size_t>(m)].gth, p) * ul));
          acc_t -= c * spin(i).cross(inertia(l) * spin(m));
        }
      for (int i = 1; i <= j; ++i) {
        const auto r = static_cast<std::size_t>(j + 1 - i);
        const Vec3 th = closure_ == Closure::continuous ? vec_at(theta_star_[r], p) : vec_at(s_[r].th, p);
        acc_t -= binom(j, i) * (sym_at(s_[static_cast<std::size_t>(i)].k, p) * th);
      }
      put_vec(nu, p, acc_u);
      put_sym(nk, p, acc_k);
      put_vec(nth, p, acc_t);
    });

    if (pressure_out && j == 0) *pressure_out = pressure(zj.u, std::min(2 * n, g.capacity()));
    const SpectralField conv = to_spectral(nu, Rank::vector, n);

    Tangent out;
    out.du = leray_project(conv);
    out.du *= -1.0;
    out.du.axpy(p_.velocity_diffusion(), laplacian(zj.u));
    out.du.axpy(p_.kappa, curl(zj.theta));
    remove_mean(out.du);

    out.dK = inertia_linear_part(zj.theta, zj.K, p_);
    out.dK += to_spectral(nk, Rank::symmetric, bk);

    SpectralField lin = theta_linear_part(zj.u, zj.theta, p_);
    if (closure_ == Closure::continuous) {
      const PhysicalField lin_phys = to_physical(lin);
      PhysicalField star(grid, Rank::vector);
      for_each_index(np, [&](std::size_t p) {
        const Vec3 rhs = vec_at(nth, p) + vec_at(lin_phys, p);
        put_vec(star, p, sym_at(jinv_, p) * rhs);
      });
      out.dtheta = to_spectral(star, Rank::vector, n);
      theta_star_.push_back(std::move(star));
    } else {
      SpectralField f = to_spectral(nth, Rank::vector, n);
      f += lin;
      out.dtheta = solver_->solve(z_[0].K, f);
      theta_star_.emplace_back();
    }
    z_.push_back(out.as_state());
    return out;
  }

 private:
  void build_inverse(double fraction) {
    const PhysicalField k = to_physical(z_[0].K);
    const Grid& g = z_[0].grid();
    jinv_ = PhysicalField(z_[0].u.grid_ptr(), Rank::symmetric);
    const double floor = fraction * std::min(p_.lambda, p_.nu);
    std::atomic<std::size_t> bad{std::numeric_limits<std::size_t>::max()};
    std::atomic<double> bad_value{0.0};
    for_each_index(g.physical_size(), [&](std::size_t p) {
      const Mat3 j = jeq_ + sym_at(k, p);
      Eigen::SelfAdjointEigenSolver<Mat3> es;
      es.computeDirect(j, Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues()(0);
      if (!(lmin > floor)) {
        std::size_t cur = bad.load();
        while (p < cur && !bad.compare_exchange_weak(cur, p)) {
        }
        if (bad.load() == p) bad_value.store(lmin);
        return;
      }
      put_sym(jinv_, p, j.inverse());
    });
    if (bad.load() != std::numeric_limits<std::size_t>::max()) {
      std::ostringstream os;
      os << "J_eq + K is not safely invertible at " << grid_location(g, bad.load())
         << ": smallest eigenvalue " << bad_value.load() << " <= floor " << floor;
      throw NumericError(os.str());
    }
  }

  const PhysParams& p_;
  Closure closure_;
  const ThetaSolver* solver_;
  Mat3 jeq_;
  Vec3 weq_;
  std::vector<State> z_;
  std::vector<Samples> s_;
  std::vector<PhysicalField> theta_star_;
  PhysicalField jinv_;
};

}  // namespace

void require_rhs_grid(const Grid& grid, int n, int k_band) {
  const int need = std::max({k_band + 3 * n, 2 * k_band + n, 4 * n}) + 1;
  if (grid.points() < need)
    throw ConfigError("grid with " + std::to_string(grid.points()) + " points per axis cannot resolve bands (" +
                      std::to_string(n) + ", " + std::to_string(k_band) + "); need at least " +
                      std::to_string(need));
  if (k_band > grid.capacity() || n > grid.capacity()) throw ConfigError("band exceeds grid capacity");
}

Evaluator::Evaluator(const PhysParams& params, Closure closure,
                     std::shared_ptr<const ThetaSolver> solver, EvalOptions options)
    : params_(params), closure_(closure), solver_(std::move(solver)), options_(options) {
  params_.validate();
}

Tangent Evaluator::rhs(const State& z, SpectralField* pressure) const {
  Ladder ladder(*this, solver_.get(), z);
  return ladder.next(pressure);
}

std::vector<Tangent> Evaluator::derivatives(const State& z, int j_max) const {
  if (j_max < 1) throw ConfigError("temporal derivative order must be at least 1");
  if (j_max > options_.max_order)
    throw ConfigError("temporal derivative order " + std::to_string(j_max) + " exceeds configured maximum " +
                      std::to_string(options_.max_order));
  return derivatives_unchecked(z, j_max);
}

std::vector<Tangent> Evaluator::derivatives_unchecked(const State& z, int j_max) const {
  Ladder ladder(*this, solver_.get(), z);
  std::vector<Tangent> out;
  out.reserve(static_cast<std::size_t>(std::max(j_max, 0)));
  for (int j = 0; j < j_max; ++j) out.push_back(ladder.next(nullptr));
  return out;
}

Tangent rhs_perturbative(const State& z, const PhysParams& params, SpectralField* pressure,
                         const EvalOptions& options) {
  return Evaluator(params, Closure::continuous, nullptr, options).rhs(z, pressure);
}

std::vector<Tangent> temporal_derivatives(const State& z, const PhysParams& params, int j_max,
                                          const EvalOptions& options) {
  return Evaluator(params, Closure::continuous, nullptr, options).derivatives(z, j_max);
}

SpectralField theta_linear_part(const SpectralField& u, const SpectralField& theta,
                                const PhysParams& params) {
  SpectralField out(theta.grid_ptr(), Rank::vector, std::max(u.band(), theta.band()));
  const Grid& g = theta.grid();
  const double kappa = params.kappa;
  const double gd = params.alpha_tilde() - params.gamma_tilde();
  const double gt = params.gamma_tilde();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    const auto k = g.wavevector(s);
    const cplx u0 = u.at(0, s), u1 = u.at(1, s), u2 = u.at(2, s);
    const cplx curl[3] = {I * (k[1] * u2 - k[2] * u1), I * (k[2] * u0 - k[0] * u2), I * (k[0] * u1 - k[1] * u0)};
    const cplx kt = k[0] * theta.at(0, s) + k[1] * theta.at(1, s) + k[2] * theta.at(2, s);
    for (int i = 0; i < 3; ++i)
      out.at(i, s) = kappa * curl[i] - (2.0 * kappa + gt * g.k2(s)) * theta.at(i, s) - gd * k[i] * kt;
  });
  return out;
}

SpectralField inertia_linear_part(const SpectralField& theta, const SpectralField& K,
                                  const PhysParams& params) {
  SpectralField out(K.grid_ptr(), Rank::symmetric, std::max(K.band(), theta.band()));
  const Grid& g = K.grid();
  const Vec3 jd(params.lambda, params.lambda, params.nu);
  Mat3 e3 = ten(Vec3::UnitZ()) * params.tau_tilde();
  const Mat3c om = e3.cast<cplx>();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    Mat3c kk;
    Mat3c th = Mat3c::Zero();
    const cplx t0 = theta.at(0, s), t1 = theta.at(1, s), t2 = theta.at(2, s);
    th(0, 1) = -t2;
    th(0, 2) = t1;
    th(1, 0) = t2;
    th(1, 2) = -t0;
    th(2, 0) = -t1;
    th(2, 1) = t0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) kk(i, j) = K.at(sym_slot(i, j), s);
    Mat3c r = om * kk - kk * om;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) += th(i, j) * (jd(j) - jd(i));
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) out.at(sym_slot(i, j), s) = 0.5 * (r(i, j) + r(j, i));
  });
  return out;
}

SpectralField pressure(const SpectralField& u, int band) {
  u.grid().require_product(u.band(), u.band(), band);
  const PhysicalField pu = to_physical(u);
  const PhysicalField pg = to_physical_gradient(u);
  PhysicalField conv(u.grid_ptr(), Rank::vector);
  for_each_index(pu.points(), [&](std::size_t p) { put_vec(conv, p, mat_at(pg, p) * vec_at(pu, p)); });
  const SpectralField c = to_spectral(conv, Rank::vector, band);
  SpectralField out(u.grid_ptr(), Rank::scalar, band);
  const Grid& g = u.grid();
  for_each_index(g.spectral_size(), [&](std::size_t s) {
    if (g.k2(s) == 0.0) return;
    const auto k = g.wavevector(s);
    out.at(0, s) = I * (k[0] * c.at(0, s) + k[1] * c.at(1, s) + k[2] * c.at(2, s)) / g.k2(s);
  });
  return out;
}

SpectralField rhs_a(const State& z, const PhysParams& params) {
  const int band = z.k_band();
  z.grid().require_product(std::max(z.band(), band), band, band);
  const PhysicalField u = to_physical(z.u);
  const PhysicalField th = to_physical(z.theta);
  const PhysicalField k = to_physical(z.K);
  std::array<PhysicalField, 3> gk{to_physical_partial(z.K, 0), to_physical_partial(z.K, 1),
                                  to_physical_partial(z.K, 2)};
  const int c13 = sym_slot(0, 2), c23 = sym_slot(1, 2);
  const double gap = params.nu - params.lambda;
  const double tt = params.tau_tilde();
  PhysicalField out(z.u.grid_ptr(), Rank::planar);
  for_each_index(u.points(), [&](std::size_t p) {
    Vec2 adv = Vec2::Zero();
    for (int b = 0; b < 3; ++b) adv += u.at(b, p) * Vec2(gk[b].at(c13, p), gk[b].at(c23, p));
    const Vec2 a(k.at(c13, p), k.at(c23, p));
    const Vec2 tp = perp(Vec2(th.at(0, p), th.at(1, p)));
    Mat2 kbar;
    kbar << k.at(sym_slot(0, 0), p), k.at(sym_slot(0, 1), p), k.at(sym_slot(0, 1), p), k.at(sym_slot(1, 1), p);
    const Vec2 r = -adv - gap * tp + (kbar - k.at(sym_slot(2, 2), p) * Mat2::Identity()) * tp +
                   (tt + th.at(2, p)) * perp(a);
    out.at(0, p) = r(0);
    out.at(1, p) = r(1);
  });
  return to_spectral(out, Rank::planar, band);
}

}  // namespace micropolar
