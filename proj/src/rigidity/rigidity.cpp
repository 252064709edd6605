#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "micropolar/errors.hpp"
#include "micropolar/execution.hpp"
#include "micropolar/pointwise.hpp"
#include "micropolar/rigidity.hpp"

namespace micropolar {

namespace {

Vec3 sorted_eigs(const Mat3& j) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(j, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Vec3 reference_spectrum(const PhysParams& p) {
  Vec3 r(p.lambda, p.lambda, p.nu);
  std::sort(r.data(), r.data() + 3);
  return r;
}

/// max and argmax of a per-point value.
template <class F>
std::pair<double, std::size_t> arg_reduce(std::size_t np, F&& f, bool take_min) {
  std::vector<double> v(np);
  for_each_index(np, [&](std::size_t p) { v[p] = f(p); });
  const auto it = take_min ? std::min_element(v.begin(), v.end()) : std::max_element(v.begin(), v.end());
  return {*it, static_cast<std::size_t>(it - v.begin())};
}

}  // namespace

PhysicalField inertia_samples(const SpectralField& K, const PhysParams& params) {
  PhysicalField j = to_physical(K);
  const Mat3 jeq = equilibrium_inertia(params);
  for (int i = 0; i < 3; ++i)
    for (double& v : j.component(sym_slot(i, i))) v += jeq(i, i);
  return j;
}

Persistence spectrum_persistence_check(const PhysicalField& J, const PhysParams& params) {
  const Vec3 ref = reference_spectrum(params);
  const std::size_t np = J.points();
  Persistence out;
  std::tie(out.max_deviation, out.at) =
      arg_reduce(np, [&](std::size_t p) { return (sorted_eigs(sym_at(J, p)) - ref).cwiseAbs().maxCoeff(); }, false);
  const double det = params.lambda * params.lambda * params.nu;
  const double tr = 2.0 * params.lambda + params.nu;
  out.det_deviation = arg_reduce(np, [&](std::size_t p) { return std::abs(sym_at(J, p).determinant() - det); }, false).first;
  out.trace_deviation = arg_reduce(np, [&](std::size_t p) { return std::abs(sym_at(J, p).trace() - tr); }, false).first;
  return out;
}

RigidityReport rigidity_check(const PhysicalField& K, const PhysParams& params, double tol) {
  RigidityReport r;
  const std::size_t np = K.points();
  const Mat3 jeq = equilibrium_inertia(params);
  const Vec3 ref = reference_spectrum(params);
  r.max_deviation = arg_reduce(np, [&](std::size_t p) {
    return (sorted_eigs(jeq + sym_at(K, p)) - ref).cwiseAbs().maxCoeff();
  }, false).first;
  r.k_sup = arg_reduce(np, [&](std::size_t p) { return sym_at(K, p).norm(); }, false).first;
  r.applicable = r.k_sup <= params.nu - params.lambda;
  std::tie(r.min_margin, r.margin_at) = arg_reduce(np, [&](std::size_t p) {
    const Mat3 k = sym_at(K, p);
    return 2.0 * std::hypot(k(0, 2), k(1, 2)) - k.norm();
  }, true);
  r.holds = !r.applicable || r.min_margin >= -tol;
  r.min_abs_n3 = std::numeric_limits<double>::quiet_NaN();
  if (r.max_deviation <= 1e-3 && params.nu != params.lambda) {
    PhysicalField j(K.grid_ptr(), Rank::symmetric);
    for (std::size_t p = 0; p < np; ++p) put_sym(j, p, jeq + sym_at(K, p));
    r.min_abs_n3 = axis_field(j, params).min_abs_n3;
  }
  return r;
}

AxisField axis_field(const PhysicalField& J, const PhysParams& params, double threshold) {
  if (params.nu == params.lambda) throw ConfigError("axis field needs nu != lambda");
  const Persistence pc = spectrum_persistence_check(J, params);
  if (pc.max_deviation > threshold)
    throw NumericError("axis field: spectrum deviation " + std::to_string(pc.max_deviation) + " at grid point " +
                       std::to_string(pc.at) + " exceeds " + std::to_string(threshold));
  const std::size_t np = J.points();
  AxisField out;
  out.n = PhysicalField(J.grid_ptr(), Rank::vector);
  std::vector<double> rec(np), n3(np), aerr(np);
  const double gap = params.nu - params.lambda;
  for_each_index(np, [&](std::size_t p) {
    const Mat3 j = sym_at(J, p);
    Eigen::SelfAdjointEigenSolver<Mat3> es(j);
    const int col = gap > 0 ? 2 : 0;
    Vec3 n = es.eigenvectors().col(col).normalized();
    if (n(2) < 0 || (n(2) == 0 && (n(0) < 0 || (n(0) == 0 && n(1) < 0)))) n = -n;
    put_vec(out.n, p, n);
    const Mat3 nn = n * n.transpose();
    rec[p] = (j - (params.nu * nn + params.lambda * (Mat3::Identity() - nn))).norm();
    n3[p] = std::abs(n(2));
    aerr[p] = std::abs(std::abs(gap) * std::abs(n(2)) * std::hypot(n(0), n(1)) - std::hypot(j(0, 2), j(1, 2)));
  });
  out.reconstruction_error = *std::max_element(rec.begin(), rec.end());
  out.min_abs_n3 = *std::min_element(n3.begin(), n3.end());
  out.a_identity_error = *std::max_element(aerr.begin(), aerr.end());
  return out;
}

Mat3 rotated_inertia(const Mat3& j0, const Vec3& omega, double t) {
  const double th = omega.norm() * t;
  Mat3 q = Mat3::Identity();
  if (th > 0.0) {
    const Mat3 w = ten(omega.normalized());
    q += std::sin(th) * w + (1.0 - std::cos(th)) * w * w;
  }
  return q * j0 * q.transpose();
}

void write_rigidity_json(std::ostream& os, const RigidityReport& r, double time) {
  nlohmann::json j;
  j["time"] = time;
  j["max_deviation"] = r.max_deviation;
  j["k_sup"] = r.k_sup;
  j["applicable"] = r.applicable;
  j["holds"] = r.holds;
  j["min_margin"] = r.min_margin;
  j["margin_at"] = r.margin_at;
  if (std::isfinite(r.min_abs_n3)) j["min_abs_n3"] = r.min_abs_n3;
  os << j.dump() << '\n';
}

}  // namespace micropolar
