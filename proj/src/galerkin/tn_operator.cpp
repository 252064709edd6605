#include <cmath>
#include <sstream>

#include "micropolar/errors.hpp"
#include "micropolar/galerkin.hpp"

namespace micropolar {

TnOperator::TnOperator(const SpectralField& K, int n, const PhysParams& params)
    : grid_(K.grid_ptr()), n_(n), params_(params) {
  if (K.rank() != Rank::symmetric) throw std::invalid_argument("T_n needs a symmetric K");
  grid_->require_product(K.band(), n, n);
  k_ = to_physical(K);
  k_sup_ = norm_lp(k_, 0.0, Rank::symmetric);
  const double limit = 0.5 * std::min(params.lambda, params.nu);
  if (!(k_sup_ < limit)) {
    std::ostringstream os;
    os << "T_n(K) needs sup|K| < " << limit << ", got " << k_sup_;
    throw NumericError(os.str());
  }
}

SpectralField TnOperator::apply(const SpectralField& v) const {
  if (v.rank() != Rank::vector || v.band() > n_) throw std::invalid_argument("T_n acts on band-n vector fields");
  const PhysicalField pv = to_physical(v);
  PhysicalField kv(grid_, Rank::vector);
  for_each_index(pv.points(), [&](std::size_t p) {
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += k_.at(sym_slot(i, j), p) * pv.at(j, p);
      kv.at(i, p) = acc;
    }
  });
  SpectralField out = to_spectral(kv, Rank::vector, n_);
  const double jd[3] = {params_.lambda, params_.lambda, params_.nu};
  for (int i = 0; i < 3; ++i) {
    auto dst = out.component(i);
    auto src = v.component(i);
    for (std::size_t s = 0; s < dst.size(); ++s) dst[s] += jd[i] * src[s];
  }
  return out;
}

SpectralField TnOperator::invert(const SpectralField& f, double tol, CgStats* stats) const {
  if (f.rank() != Rank::vector || f.band() > n_) throw std::invalid_argument("T_n acts on band-n vector fields");
  const double inv[3] = {1.0 / params_.lambda, 1.0 / params_.lambda, 1.0 / params_.nu};
  auto precondition = [&](const SpectralField& r) {
    SpectralField z = r;
    for (int i = 0; i < 3; ++i)
      for (auto& c : z.component(i)) c *= inv[i];
    return z;
  };
  const double fnorm = norm_l2(f);
  SpectralField x(grid_, Rank::vector, n_);
  if (stats) *stats = {};
  if (fnorm == 0.0) return x;
  x = precondition(f);
  SpectralField r = f - apply(x);
  SpectralField z = precondition(r);
  SpectralField d = z;
  double rz = inner(r, z);
  double rel = norm_l2(r) / fnorm;
  int it = 0;
  while (rel > tol) {
    if (it == max_iterations) {
      std::ostringstream os;
      os << "T_n inversion did not converge in " << max_iterations << " iterations (residual " << rel << ")";
      throw NumericError(os.str());
    }
    const SpectralField td = apply(d);
    const double step = rz / inner(d, td);
    x.axpy(step, d);
    r.axpy(-step, td);
    z = precondition(r);
    const double rz_next = inner(r, z);
    d *= rz_next / rz;
    d += z;
    rz = rz_next;
    rel = norm_l2(r) / fnorm;
    ++it;
  }
  if (stats) *stats = {it, rel};
  return x;
}

SpectralField PcgThetaSolver::solve(const SpectralField& K, const SpectralField& f) const {
  return TnOperator(K, f.band(), params_).invert(f, tol_);
}

}  // namespace micropolar
