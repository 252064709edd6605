#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "micropolar/execution.hpp"
#include "micropolar/params.hpp"
#include "micropolar/state.hpp"

namespace micropolar {

using cplx = std::complex<double>;
using Mat8c = Eigen::Matrix<cplx, 8, 8>;
using Vec8c = Eigen::Matrix<cplx, 8, 1>;

/// Linearized operator at one wavevector. Unknowns (u, theta, a) in C^3 x C^3 x C^2.
struct SymbolMatrix {
  std::array<double, 3> k{};  ///< physical wavevector 2 pi m
  Mat8c B;
  /// tau~ [R, .] on symmetric 2x2 matrices in the basis (K11, K12, K22).
  Eigen::Matrix3d kbar_block;
};

SymbolMatrix assemble_symbol(const std::array<double, 3>& k, const PhysParams& params);
inline SymbolMatrix assemble_symbol(const std::array<int, 3>& m, const PhysParams& params) {
  constexpr double tau = 6.283185307179586;
  return assemble_symbol(std::array<double, 3>{tau * m[0], tau * m[1], tau * m[2]}, params);
}

/// B restricted to the complement of the incompressibility kernel: 7x7 for k != 0 (velocity
/// orthogonal to k), 5x5 at k = 0 (velocity rows vanish).
Eigen::MatrixXcd deflated_symbol(const SymbolMatrix& s);

/// exp(t B) v.
Vec8c evolve_linear(const SymbolMatrix& s, const Vec8c& v, double t);

/// State holding (u, theta, a) = v at lattice mode m and its conjugate at -m; velocity must be orthogonal to m.
State embed_mode(const GridPtr& grid, int n, const std::array<int, 3>& m, const Vec8c& v);
/// (u, theta, a) coefficients of z at mode m.
Vec8c extract_mode(const State& z, const std::array<int, 3>& m);

struct ScanPoint {
  std::array<int, 3> m{};
  bool ok = true;
  std::vector<cplx> eigenvalues;  ///< deflated
  cplx tracked{0.0, 0.0};         ///< least damped eigenvalue with Im > 0
  bool has_tracked = false;
};

struct ShellStat {
  int shell = 0;  ///< |m|_inf
  double tracked_re = 0.0;  ///< max over the shell of Re z(k)
  std::array<int, 3> at{};
};

struct SymbolSpectrum {
  int k_max = 0;
  std::vector<ScanPoint> points;
  double max_re = 0.0;  ///< over deflated eigenvalues
  std::array<int, 3> argmax{};
  double im_bound = 0.0;  ///< max |Im z|
  std::vector<ShellStat> shells;
  std::vector<std::array<int, 3>> failures;
  std::array<cplx, 3> kbar_eigenvalues{};
};

SymbolSpectrum eigen_scan(const PhysParams& params, int k_max, Exec exec);
inline SymbolSpectrum eigen_scan(const PhysParams& params, int k_max) {
  return eigen_scan(params, k_max, default_exec());
}

enum class Stability { stable, unstable, inconclusive };

struct StabilityVerdict {
  Stability verdict = Stability::inconclusive;
  std::string text;
  double max_re = 0.0;
  std::array<int, 3> witness{};
  bool matches_inertia = false;  ///< stable exactly when nu > lambda
};

/// Throws ConfigError when nu == lambda.
StabilityVerdict classify_stability(const PhysParams& params, int k_max, double tol = 1e-10);
StabilityVerdict classify_stability(const SymbolSpectrum& scan, const PhysParams& params, double tol = 1e-10);

std::string to_string(Stability s);

/// One row per wavenumber: mx,my,mz, then re_i,im_i of the deflated eigenvalues.
void write_scan_csv(std::ostream& os, const SymbolSpectrum& s);
void write_scan_json(std::ostream& os, const SymbolSpectrum& s, const StabilityVerdict& v);

}  // namespace micropolar
