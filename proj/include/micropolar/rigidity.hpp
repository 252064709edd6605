#pragma once

#include <cstddef>
#include <iosfwd>

#include "micropolar/state.hpp"

namespace micropolar {

/// Physical samples of J = J_eq + K.
PhysicalField inertia_samples(const SpectralField& K, const PhysParams& params);

struct Persistence {
  double max_deviation = 0.0;  ///< max |sorted eig(J) - sorted(lambda, lambda, nu)|
  std::size_t at = 0;
  double det_deviation = 0.0;    ///< max |det J - lambda^2 nu|
  double trace_deviation = 0.0;  ///< max |tr J - (2 lambda + nu)|
};

/// J is a symmetric physical field.
Persistence spectrum_persistence_check(const PhysicalField& J, const PhysParams& params);

struct RigidityReport {
  double max_deviation = 0.0;
  double k_sup = 0.0;       ///< max |K|_F over the grid
  bool applicable = false;  ///< k_sup <= nu - lambda
  bool holds = true;        ///< |K| <= 2|a| + tol everywhere; true when not applicable
  double min_margin = 0.0;  ///< min of 2|a| - |K|
  std::size_t margin_at = 0;
  double min_abs_n3 = 0.0;  ///< from the axis field when the spectrum is intact, else NaN
};

/// K is a symmetric physical field.
RigidityReport rigidity_check(const PhysicalField& K, const PhysParams& params, double tol = 1e-10);

struct AxisField {
  PhysicalField n;  ///< unit nu-eigenvector, n3 >= 0
  double reconstruction_error = 0.0;  ///< max |J - (nu n n^T + lambda (I - n n^T))|_F
  double min_abs_n3 = 0.0;
  double a_identity_error = 0.0;  ///< max | (nu - lambda)|n3||n_bar| - |(J13, J23)| |
};

/// Throws NumericError when the spectrum deviation exceeds `threshold` (the nu-axis is then ill-defined).
AxisField axis_field(const PhysicalField& J, const PhysParams& params, double threshold = 1e-3);

/// J(t) = Q J0 Q^T with Q = exp(t ten(omega)), for constant omega.
Mat3 rotated_inertia(const Mat3& j0, const Vec3& omega, double t);

void write_rigidity_json(std::ostream& os, const RigidityReport& r, double time);

}  // namespace micropolar
