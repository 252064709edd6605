#pragma once

#include "micropolar/spectral_field.hpp"
#include "micropolar/tensor.hpp"

namespace micropolar {

// Accessors for one grid point of physical samples.

inline Vec3 vec_at(const PhysicalField& f, std::size_t p) { return {f.at(0, p), f.at(1, p), f.at(2, p)}; }

inline Vec2 planar_at(const PhysicalField& f, std::size_t p) { return {f.at(0, p), f.at(1, p)}; }

inline Mat3 sym_at(const PhysicalField& f, std::size_t p) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = f.at(sym_slot(i, j), p);
  return m;
}

inline Mat3 mat_at(const PhysicalField& f, std::size_t p) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = f.at(3 * i + j, p);
  return m;
}

inline void put_vec(PhysicalField& f, std::size_t p, const Vec3& v) {
  for (int i = 0; i < 3; ++i) f.at(i, p) = v(i);
}

inline void put_sym(PhysicalField& f, std::size_t p, const Mat3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) f.at(sym_slot(i, j), p) = 0.5 * (m(i, j) + m(j, i));
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace micropolar
