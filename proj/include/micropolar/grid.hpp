#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <new>
#include <vector>

namespace micropolar {

using cplx = std::complex<double>;

/// Allocator returning 64-byte aligned storage so FFTs can use SIMD plans.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{64}));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t{64}); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAllocator<T>>;

/// Shape of the retained mode set P_m.
enum class BandShape { box, ball };

/// Periodic grid on the unit torus with an r2c spectral layout.
///
/// Spectral slot s = (i*N + j)*(N/2+1) + l holds the coefficient of
/// exp(2*pi*i m.x) with m = (wrap(i), wrap(j), l). Coefficients are normalised
/// so that f(x) = sum_m c_m exp(2*pi*i m.x). The capacity is the largest band
/// any field on this grid may occupy; it must stay below N/2.
class Grid {
 public:
  Grid(int capacity, int points, BandShape shape = BandShape::box);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  static std::shared_ptr<const Grid> make(int capacity, int points,
                                          BandShape shape = BandShape::box);
  /// Smallest size >= min_points whose prime factors are in {2,3,5,7}.
  static int fft_friendly(int min_points);

  int capacity() const { return capacity_; }
  int points() const { return n_; }
  BandShape shape() const { return shape_; }
  std::size_t spectral_size() const { return spectral_size_; }
  std::size_t physical_size() const { return physical_size_; }

  const std::array<int, 3>& mode(std::size_t s) const { return modes_[s]; }
  std::array<double, 3> wavevector(std::size_t s) const;
  double k2(std::size_t s) const { return k2_[s]; }
  /// 2 for slots standing for a +-k pair, 1 on self-conjugate planes.
  double weight(std::size_t s) const { return weight_[s]; }
  bool in_band(std::size_t s, int m) const;
  /// Smallest band containing slot s under the grid's shape.
  int band_of(std::size_t s) const { return band_[s]; }
  /// Slot holding mode m, or -1 when m lives in the conjugate half.
  std::ptrdiff_t slot_of(const std::array<int, 3>& m) const;

  /// Products of bands a and b retained at c are exact when N >= a+b+c+1.
  bool supports_product(int a, int b, int c) const { return n_ >= a + b + c + 1; }
  void require_product(int a, int b, int c) const;

  /// Forward transform, normalised by 1/N^3; the input is not modified.
  void forward(const double* in, cplx* out) const;
  /// Forward transform that also zeroes every slot outside `band`.
  void forward(const double* in, cplx* out, int band) const;
  /// Inverse transform; the input is not modified.
  void inverse(const cplx* in, double* out) const;
  /// Inverse transform of d/dx_axis of the input.
  void inverse_partial(const cplx* in, int axis, double* out) const;

 private:
  struct Plans;
  int capacity_;
  int n_;
  BandShape shape_;
  std::size_t spectral_size_;
  std::size_t physical_size_;
  std::vector<std::array<int, 3>> modes_;
  std::vector<double> k2_;
  std::vector<double> weight_;
  std::vector<int> band_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace micropolar
