#include "micropolar/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "micropolar/errors.hpp"

namespace micropolar {

namespace {

// Planner calls are not thread safe in FFTW.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int wrap(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

struct Grid::Plans {
  // Aligned plans use SIMD codelets; the unaligned pair serves arbitrary pointers.
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan r2c_u = nullptr;
  fftw_plan c2r_u = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (auto p : {r2c, c2r, r2c_u, c2r_u})
      if (p) fftw_destroy_plan(p);
  }
  fftw_plan forward(const double* in, const cplx* out) const {
    return aligned(in) && aligned(out) ? r2c : r2c_u;
  }
  fftw_plan backward(const cplx* in, const double* out) const {
    return aligned(in) && aligned(out) ? c2r : c2r_u;
  }
  static bool aligned(const void* p) {
    return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0;
  }
};

Grid::Grid(int capacity, int points, BandShape shape)
    : capacity_(capacity), n_(points), shape_(shape) {
  if (capacity < 0) throw ConfigError("grid capacity must be non-negative");
  if (points < 2 * capacity + 2)
    throw ConfigError("grid of " + std::to_string(points) + " points cannot hold band " +
                      std::to_string(capacity));
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t h = n / 2 + 1;
  spectral_size_ = n * n * h;
  physical_size_ = n * n * n;
  modes_.resize(spectral_size_);
  k2_.resize(spectral_size_);
  weight_.resize(spectral_size_);
  band_.resize(spectral_size_);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < h; ++l) {
        const std::size_t s = (i * n + j) * h + l;
        const std::array<int, 3> m{wrap(static_cast<int>(i), n_), wrap(static_cast<int>(j), n_),
                                   static_cast<int>(l)};
        modes_[s] = m;
        const int m2 = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
        k2_[s] = two_pi * two_pi * m2;
        const bool self_conjugate = (l == 0) || (n % 2 == 0 && l == n / 2);
        weight_[s] = self_conjugate ? 1.0 : 2.0;
        if (shape_ == BandShape::box) {
          band_[s] = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
        } else {
          int b = static_cast<int>(std::floor(std::sqrt(static_cast<double>(m2))));
          while (b * b < m2) ++b;
          while (b > 0 && (b - 1) * (b - 1) >= m2) --b;
          band_[s] = b;
        }
      }

  plans_ = std::make_unique<Plans>();
  aligned_vector<double> rbuf(physical_size_);
  aligned_vector<cplx> cbuf(spectral_size_);
  auto* cptr = reinterpret_cast<fftw_complex*>(cbuf.data());
  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_3d(n_, n_, n_, rbuf.data(), cptr, FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_3d(n_, n_, n_, cptr, rbuf.data(), FFTW_ESTIMATE);
  plans_->r2c_u = fftw_plan_dft_r2c_3d(n_, n_, n_, rbuf.data(), cptr, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->c2r_u = fftw_plan_dft_c2r_3d(n_, n_, n_, cptr, rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->r2c || !plans_->c2r || !plans_->r2c_u || !plans_->c2r_u)
    throw NumericError("FFTW planning failed");
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::make(int capacity, int points, BandShape shape) {
  return std::make_shared<const Grid>(capacity, points, shape);
}

int Grid::fft_friendly(int min_points) {
  for (int n = std::max(min_points, 1);; ++n) {
    int r = n;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

std::array<double, 3> Grid::wavevector(std::size_t s) const {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto& m = modes_[s];
  return {two_pi * m[0], two_pi * m[1], two_pi * m[2]};
}

bool Grid::in_band(std::size_t s, int m) const { return band_[s] <= m; }

std::ptrdiff_t Grid::slot_of(const std::array<int, 3>& m) const {
  if (m[2] < 0) return -1;
  for (int c = 0; c < 3; ++c)
    if (2 * std::abs(m[c]) >= n_) return -1;
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t h = n / 2 + 1;
  const std::size_t i = static_cast<std::size_t>((m[0] + n_) % n_);
  const std::size_t j = static_cast<std::size_t>((m[1] + n_) % n_);
  return static_cast<std::ptrdiff_t>((i * n + j) * h + static_cast<std::size_t>(m[2]));
}

void Grid::require_product(int a, int b, int c) const {
  if (!supports_product(a, b, c))
    throw ConfigError("grid of " + std::to_string(n_) + " points too small for product of bands " +
                      std::to_string(a) + " and " + std::to_string(b) + " retained at " +
                      std::to_string(c) + " (needs " + std::to_string(a + b + c + 1) + ")");
}

void Grid::forward(const double* in, cplx* out) const {
  // r2c out of place preserves its input.
  fftw_execute_dft_r2c(plans_->forward(in, out), const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(physical_size_);
  for (std::size_t s = 0; s < spectral_size_; ++s) out[s] *= scale;
}

void Grid::forward(const double* in, cplx* out, int band) const {
  fftw_execute_dft_r2c(plans_->forward(in, out), const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(physical_size_);
  for (std::size_t s = 0; s < spectral_size_; ++s) out[s] = band_[s] <= band ? out[s] * scale : cplx{};
}

void Grid::inverse_partial(const cplx* in, int axis, double* out) const {
  thread_local aligned_vector<cplx> scratch;
  scratch.resize(spectral_size_);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t s = 0; s < spectral_size_; ++s) {
    const double k = two_pi * modes_[s][static_cast<std::size_t>(axis)];
    scratch[s] = {-k * in[s].imag(), k * in[s].real()};
  }
  fftw_execute_dft_c2r(plans_->backward(scratch.data(), out), reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

void Grid::inverse(const cplx* in, double* out) const {
  thread_local aligned_vector<cplx> scratch;
  scratch.assign(in, in + spectral_size_);
  fftw_execute_dft_c2r(plans_->backward(scratch.data(), out), reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace micropolar
