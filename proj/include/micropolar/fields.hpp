#pragma once

#include <array>
#include <span>

#include "micropolar/execution.hpp"
#include "micropolar/grid.hpp"
#include "micropolar/spectral_field.hpp"

namespace micropolar {

using MultiIndex = std::array<int, 3>;

// Transforms.
PhysicalField to_physical(const SpectralField& f);
/// Samples of d f / dx_axis.
PhysicalField to_physical_partial(const SpectralField& f, int axis);
/// Samples of (grad v)_ij = d_j v_i, row major.
PhysicalField to_physical_gradient(const SpectralField& v);
/// Keeps only modes inside `band`; everything else in the samples is discarded.
SpectralField to_spectral(const PhysicalField& samples, Rank rank, int band);
SpectralField to_spectral(std::span<const double> samples, const GridPtr& grid, Rank rank,
                          int band);

// Mode projections.
SpectralField project_modes(const SpectralField& f, int m);
SpectralField leray_project(const SpectralField& v);
/// Replaces coefficients on self-conjugate planes by their Hermitian average.
void hermitian_symmetrize(SpectralField& f);
/// Symmetric part of a general matrix field.
SpectralField symmetric_part(const SpectralField& m);

// Differential operators, all exact on coefficients.
SpectralField derivative(const SpectralField& f, const MultiIndex& alpha);
std::array<SpectralField, 3> partials(const SpectralField& f);
/// (grad v)_ij = d_j v_i as a general matrix.
SpectralField gradient(const SpectralField& v);
SpectralField gradient_scalar(const SpectralField& f);
SpectralField divergence(const SpectralField& v);
/// Row divergence (div A)_i = d_j A_ij of a matrix field.
SpectralField divergence_rows(const SpectralField& a);
SpectralField curl(const SpectralField& v);
SpectralField laplacian(const SpectralField& f);
/// Solves lap(phi) = f for mean-zero phi; the mean of f is ignored.
SpectralField inverse_laplacian(const SpectralField& f);
SpectralField mean_mode(const SpectralField& f);
void remove_mean(SpectralField& f);

// Products.
enum class Product {
  scale,          ///< scalar times any rank, slot-wise
  dot,            ///< vector . vector -> scalar
  cross,          ///< vector x vector -> vector
  matvec,         ///< symmetric matrix times vector -> vector
  sym_matmat,     ///< sym(A B) for symmetric A, B -> symmetric
  componentwise,  ///< equal ranks, slot-wise product
};

/// Exact truncated convolution of f and g; requires N >= band(f) + band(g) + retain + 1.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, int retain,
                                Product kind);

// Inner products and norms.
/// Real L2 inner product summed over components.
double inner(const SpectralField& f, const SpectralField& g);
double norm_l2(const SpectralField& f);
double norm_l2_squared(const SpectralField& f);

enum class SobolevForm { derivative_sum, multiplier };
/// Squared H^s norm; derivative_sum is sum over |beta| <= s of ||d^beta f||^2.
double norm_h_squared(const SpectralField& f, int s,
                      SobolevForm form = SobolevForm::derivative_sum);
double norm_h(const SpectralField& f, int s, SobolevForm form = SobolevForm::derivative_sum);
/// sum over multi-indices |beta| <= s of prod k_j^(2 beta_j).
double derivative_sum_weight(const std::array<double, 3>& k, int s);
/// L^p norm of the pointwise Euclidean magnitude, p in {1, 2, inf} (inf as p <= 0).
double norm_lp(const SpectralField& f, double p);
/// `rank` sets the Frobenius weights of the stored slots.
double norm_lp(const PhysicalField& f, double p, Rank rank);
double norm_linf(const SpectralField& f);

/// Grid quadrature of sum_c f_c g_c (raw slots, no Frobenius weights), exact for trigonometric polynomials of degree < N.
double quadrature(const PhysicalField& f, const PhysicalField& g);

}  // namespace micropolar
