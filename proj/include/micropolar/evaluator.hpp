#pragma once

#include <memory>
#include <vector>

#include "micropolar/state.hpp"

namespace micropolar {

/// How the theta equation is closed.
/// continuous: theta_t = P_n[(J_eq + K)^{-1} (...)] pointwise on the grid.
/// galerkin:   T_n(K) theta_t = P_n(...), solved by a ThetaSolver.
enum class Closure { continuous, galerkin };

/// Solves J_eq v + P_n(K v) = f for v on the band of f.
class ThetaSolver {
 public:
  virtual ~ThetaSolver() = default;
  virtual SpectralField solve(const SpectralField& K, const SpectralField& f) const = 0;
};

struct EvalOptions {
  /// Pointwise inversion requires min eig(J_eq + K) > floor_fraction * min(lambda, nu).
  double floor_fraction = 0.5;
  /// Largest temporal order accepted by derivatives().
  int max_order = 2;
};

class Evaluator {
 public:
  Evaluator(const PhysParams& params, Closure closure,
            std::shared_ptr<const ThetaSolver> solver = nullptr, EvalOptions options = {});

  const PhysParams& params() const { return params_; }
  Closure closure() const { return closure_; }
  const EvalOptions& options() const { return options_; }

  /// d/dt Z. When `pressure` is given it receives -lap^{-1} div(u.grad u) on band 2n.
  Tangent rhs(const State& z, SpectralField* pressure = nullptr) const;
  /// d^j/dt^j Z for j = 1..j_max.
  std::vector<Tangent> derivatives(const State& z, int j_max) const;
  /// Same, ignoring max_order.
  std::vector<Tangent> derivatives_unchecked(const State& z, int j_max) const;

 private:
  PhysParams params_;
  Closure closure_;
  std::shared_ptr<const ThetaSolver> solver_;
  EvalOptions options_;
};

/// Continuous right-hand side of the perturbative system.
Tangent rhs_perturbative(const State& z, const PhysParams& params,
                         SpectralField* pressure = nullptr, const EvalOptions& options = {});
std::vector<Tangent> temporal_derivatives(const State& z, const PhysParams& params, int j_max,
                                          const EvalOptions& options = {});

/// d/dt a from its own equation, with products kept on the band of K.
SpectralField rhs_a(const State& z, const PhysParams& params);

/// kappa curl u - 2 kappa theta + (alpha~ - gamma~) grad div theta + gamma~ lap theta.
SpectralField theta_linear_part(const SpectralField& u, const SpectralField& theta,
                                const PhysParams& params);
/// [Theta, J_eq] + [Omega_eq, K] on coefficients; symmetric, on the band of K.
SpectralField inertia_linear_part(const SpectralField& theta, const SpectralField& K,
                                  const PhysParams& params);
/// p = -lap^{-1} div(u.grad u), retained on `band`.
SpectralField pressure(const SpectralField& u, int band);

/// Throws ConfigError unless the grid resolves every product of the right-hand side exactly.
void require_rhs_grid(const Grid& grid, int n, int k_band);

}  // namespace micropolar
