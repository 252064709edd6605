#include "micropolar/tensor.hpp"

namespace micropolar {

Mat3 ten(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

Vec3 vc(const Mat3& a) {
  return 0.5 * Vec3(a(2, 1) - a(1, 2), a(0, 2) - a(2, 0), a(1, 0) - a(0, 1));
}

Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }

double frobenius_inner(const Mat3& a, const Mat3& b) { return (a.array() * b.array()).sum(); }

Mat3 commutator_block_form(const Vec3& omega, const Mat3& j) {
  Mat2 r;
  r << 0.0, -1.0, 1.0, 0.0;
  const Mat2 jbar = j.topLeftCorner<2, 2>();
  const Vec2 a = axial_column(j);
  const Vec2 wp = perp(omega.head<2>());
  const double w3 = omega.z();

  Mat3 out;
  out.topLeftCorner<2, 2>() = w3 * (r * jbar - jbar * r) - (wp * a.transpose() + a * wp.transpose());
  const Vec2 side = (jbar - j(2, 2) * Mat2::Identity()) * wp + w3 * perp(a);
  out.topRightCorner<2, 1>() = side;
  out.bottomLeftCorner<1, 2>() = side.transpose();
  out(2, 2) = 2.0 * a.dot(wp);
  return out;
}

}  // namespace micropolar
