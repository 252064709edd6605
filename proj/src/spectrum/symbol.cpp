#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "micropolar/spectrum.hpp"
#include "micropolar/tensor.hpp"

namespace micropolar {

namespace {

const cplx I{0.0, 1.0};

Eigen::Matrix3cd ten_c(const Vec3& w) { return ten(w).cast<cplx>(); }

}  // namespace

SymbolMatrix assemble_symbol(const std::array<double, 3>& kk, const PhysParams& p) {
  SymbolMatrix s;
  s.k = kk;
  const Vec3 k(kk[0], kk[1], kk[2]);
  const double k2 = k.squaredNorm();
  Mat3 pl = Mat3::Identity();
  if (k2 > 0.0) pl -= k * k.transpose() / k2;

  const Mat3 jeq = Vec3(p.lambda, p.lambda, p.nu).asDiagonal();
  const Vec3 weq(0.0, 0.0, p.tau_tilde());
  const Eigen::Matrix3cd curl = I * ten_c(k);
  const double tt = p.tau_tilde();

  s.B.setZero();
  s.B.block<3, 3>(0, 0) = (-p.velocity_diffusion() * k2 * pl).cast<cplx>();
  s.B.block<3, 3>(0, 3) = p.kappa * (pl.cast<cplx>() * curl);

  Mat3 lin = -2.0 * p.kappa * Mat3::Identity() - (p.alpha_tilde() - p.gamma_tilde()) * k * k.transpose() -
             p.gamma_tilde() * k2 * Mat3::Identity() - ten(weq) * jeq + ten(jeq * weq);
  Eigen::Matrix<double, 3, 2> lift;
  lift << 0, -1, 1, 0, 0, 0;
  const Mat3 jinv = jeq.inverse();
  s.B.block<3, 3>(3, 0) = p.kappa * (jinv.cast<cplx>() * curl);
  s.B.block<3, 3>(3, 3) = (jinv * lin).cast<cplx>();
  s.B.block<3, 2>(3, 6) = (-tt * tt * jinv * lift).cast<cplx>();

  Eigen::Matrix<double, 2, 3> perp_bar;
  perp_bar << 0, -1, 0, 1, 0, 0;
  Mat2 r;
  r << 0, -1, 1, 0;
  s.B.block<2, 3>(6, 3) = (-(p.nu - p.lambda) * perp_bar).cast<cplx>();
  s.B.block<2, 2>(6, 6) = (tt * r).cast<cplx>();

  s.kbar_block << 0, -2, 0, 1, 0, -1, 0, 2, 0;
  s.kbar_block *= tt;
  return s;
}

Eigen::MatrixXcd deflated_symbol(const SymbolMatrix& s) {
  const Vec3 k(s.k[0], s.k[1], s.k[2]);
  if (k.squaredNorm() == 0.0) return s.B.block<5, 5>(3, 3);
  const Vec3 kh = k.normalized();
  int e = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(kh(i)) < std::abs(kh(e))) e = i;
  const Vec3 q1 = kh.cross(Vec3::Unit(e)).normalized();
  const Vec3 q2 = kh.cross(q1);
  Eigen::Matrix<double, 8, 7> t = Eigen::Matrix<double, 8, 7>::Zero();
  t.block<3, 1>(0, 0) = q1;
  t.block<3, 1>(0, 1) = q2;
  t.block<5, 5>(3, 2).setIdentity();
  const Eigen::Matrix<cplx, 8, 7> tc = t.cast<cplx>();
  return tc.transpose() * s.B * tc;
}

Vec8c evolve_linear(const SymbolMatrix& s, const Vec8c& v, double t) {
  const Mat8c e = (t * s.B).exp();
  return e * v;
}

}  // namespace micropolar

namespace micropolar {

namespace {

constexpr int a_slots[2] = {2, 4};

cplx get(const SpectralField& f, int c, const std::array<int, 3>& m) {
  const auto s = f.grid().slot_of(m);
  if (s >= 0) return f.at(c, static_cast<std::size_t>(s));
  const auto t = f.grid().slot_of({-m[0], -m[1], -m[2]});
  if (t < 0) throw std::invalid_argument("mode outside the grid");
  return std::conj(f.at(c, static_cast<std::size_t>(t)));
}

void put(SpectralField& f, int c, const std::array<int, 3>& m, cplx v) {
  const auto s = f.grid().slot_of(m);
  if (s >= 0) f.at(c, static_cast<std::size_t>(s)) = v;
  const auto t = f.grid().slot_of({-m[0], -m[1], -m[2]});
  if (t >= 0) f.at(c, static_cast<std::size_t>(t)) = std::conj(v);
}

}  // namespace

State embed_mode(const GridPtr& grid, int n, const std::array<int, 3>& m, const Vec8c& v) {
  if (std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])}) > n)
    throw std::invalid_argument("mode outside the velocity band");
  if (m == std::array<int, 3>{0, 0, 0}) throw std::invalid_argument("embed_mode needs m != 0");
  State z = State::zero(grid, n);
  for (int c = 0; c < 3; ++c) {
    put(z.u, c, m, v(c));
    put(z.theta, c, m, v(3 + c));
  }
  for (int c = 0; c < 2; ++c) put(z.K, a_slots[c], m, v(6 + c));
  return z;
}

Vec8c extract_mode(const State& z, const std::array<int, 3>& m) {
  Vec8c v;
  for (int c = 0; c < 3; ++c) {
    v(c) = get(z.u, c, m);
    v(3 + c) = get(z.theta, c, m);
  }
  for (int c = 0; c < 2; ++c) v(6 + c) = get(z.K, a_slots[c], m);
  return v;
}

}  // namespace micropolar
