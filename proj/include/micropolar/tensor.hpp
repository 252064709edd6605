#pragma once

#include <Eigen/Dense>

namespace micropolar {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Skew matrix with ten(w) v = w x v.
Mat3 ten(const Vec3& w);
/// Axial vector of the antisymmetric part; vc(ten(w)) = w.
Vec3 vc(const Mat3& a);
Mat3 commutator(const Mat3& a, const Mat3& b);
Mat3 sym(const Mat3& a);
double frobenius_inner(const Mat3& a, const Mat3& b);

/// v^perp = (-v2, v1).
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }
/// Lift of a^perp into R^3 with zero third entry.
inline Vec3 perp_lift(const Vec2& a) { return {-a.y(), a.x(), 0.0}; }
/// Off-diagonal column (J13, J23).
inline Vec2 axial_column(const Mat3& j) { return {j(0, 2), j(1, 2)}; }

/// [ten(omega), J] assembled from its 2+1 block decomposition.
Mat3 commutator_block_form(const Vec3& omega, const Mat3& j);

}  // namespace micropolar
