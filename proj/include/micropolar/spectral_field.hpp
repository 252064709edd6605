#pragma once

#include <array>
#include <span>
#include <vector>

#include "micropolar/grid.hpp"

namespace micropolar {

/// Tensor rank of a field. Symmetric matrices store (11,12,13,22,23,33);
/// general matrices are row major.
enum class Rank { scalar, planar, vector, symmetric, matrix };

constexpr int components(Rank r) {
  switch (r) {
    case Rank::scalar: return 1;
    case Rank::planar: return 2;
    case Rank::vector: return 3;
    case Rank::symmetric: return 6;
    case Rank::matrix: return 9;
  }
  return 0;
}

constexpr int sym_slot(int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  constexpr int first[3] = {0, 3, 5};
  return first[i] + (j - i);
}

/// Weight of a stored slot in the Frobenius norm (off-diagonal symmetric slots count twice).
constexpr double slot_weight(Rank r, int c) {
  return (r == Rank::symmetric && (c == 1 || c == 2 || c == 4)) ? 2.0 : 1.0;
}

/// Band-limited real field stored as Fourier coefficients.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(GridPtr grid, Rank rank, int band);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Rank rank() const { return rank_; }
  int band() const { return band_; }
  int components() const { return micropolar::components(rank_); }
  bool empty() const { return !grid_; }

  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;
  cplx& at(int c, std::size_t s) { return data_[c * stride_ + s]; }
  const cplx& at(int c, std::size_t s) const { return data_[c * stride_ + s]; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  /// Widens the declared band; coefficients are untouched.
  void widen_band(int band);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  /// this += s * o
  SpectralField& axpy(double s, const SpectralField& o);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  bool same_shape(const SpectralField& o) const;

 private:
  GridPtr grid_;
  Rank rank_ = Rank::scalar;
  int band_ = 0;
  std::size_t stride_ = 0;
  aligned_vector<cplx> data_;
};

/// Samples of a field on the physical grid, one contiguous block per component.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(GridPtr grid, Rank rank);
  PhysicalField(GridPtr grid, int ncomp);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int components() const { return ncomp_; }
  std::size_t points() const { return stride_; }

  std::span<double> component(int c) { return {data_.data() + c * stride_, stride_}; }
  std::span<const double> component(int c) const { return {data_.data() + c * stride_, stride_}; }
  double& at(int c, std::size_t p) { return data_[c * stride_ + p]; }
  double at(int c, std::size_t p) const { return data_[c * stride_ + p]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  GridPtr grid_;
  int ncomp_ = 0;
  std::size_t stride_ = 0;
  aligned_vector<double> data_;
};

}  // namespace micropolar
