#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "micropolar/evaluator.hpp"
#include "micropolar/snapshot.hpp"

namespace micropolar {

struct CgStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// T_n(K) v = J_eq v + P_n(K v) on band-n vector fields.
class TnOperator {
 public:
  /// Throws NumericError unless sup |K| < min(lambda, nu) / 2 on the grid.
  TnOperator(const SpectralField& K, int n, const PhysParams& params);

  int band() const { return n_; }
  double k_sup() const { return k_sup_; }
  SpectralField apply(const SpectralField& v) const;
  /// Preconditioned conjugate gradients with J_eq^{-1}; stops at |T v - f| <= tol |f|.
  SpectralField invert(const SpectralField& f, double tol = 1e-10, CgStats* stats = nullptr) const;

  static constexpr int max_iterations = 200;

 private:
  GridPtr grid_;
  int n_;
  PhysParams params_;
  PhysicalField k_;
  double k_sup_ = 0.0;
};

class PcgThetaSolver : public ThetaSolver {
 public:
  PcgThetaSolver(const PhysParams& params, double tol) : params_(params), tol_(tol) {}
  SpectralField solve(const SpectralField& K, const SpectralField& f) const override;

 private:
  PhysParams params_;
  double tol_;
};

/// Evaluator for the approximate system on (P_n, P_n, P_2n).
Evaluator galerkin_evaluator(const PhysParams& params, double cg_tol = 1e-10, EvalOptions options = {});
Tangent approximate_rhs(const State& z, const PhysParams& params, double cg_tol = 1e-10);

enum class Stepper { rk4, if_rk4 };

struct GalerkinConfig {
  int n = 8;
  int points = 0;  ///< 0 picks the smallest FFT-friendly size resolving every product
  BandShape shape = BandShape::box;
  Stepper stepper = Stepper::if_rk4;
  Closure closure = Closure::galerkin;
  double dt = 0.01;
  double t_end = 1.0;
  int snapshot_every = 10;
  double cg_tol = 1e-10;
  double blowup_threshold = 1e3;  ///< halt once ||K||_{H^3} exceeds this

  void validate() const;
  int resolved_points() const;
  GridPtr make_grid() const;
};

/// Fixed-step integrator of d/dt Z = F(Z).
class Integrator {
 public:
  Integrator(const PhysParams& params, const GalerkinConfig& cfg);

  const Evaluator& evaluator() const { return evaluator_; }
  const GalerkinConfig& config() const { return cfg_; }

  /// One step of size dt, followed by constraint re-projection.
  State step(const State& z, double dt) const;

  using Observer = std::function<void(int index, double time, const State& z)>;
  /// Calls `observe` at t = 0 and after every snapshot_every steps; returns the final state.
  State simulate(const State& z0, const Observer& observe) const;

 private:
  struct Factors;
  State rk4(const State& z, double dt) const;
  State lawson(const State& z, double dt) const;
  State apply_linear(const State& z) const;
  void propagate(State& z, const Factors& f, bool half) const;
  const Factors& factors(double dt, const Grid& g) const;
  void guard(const State& z, double t) const;

  PhysParams params_;
  GalerkinConfig cfg_;
  Evaluator evaluator_;
  mutable std::vector<std::shared_ptr<Factors>> cache_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
};

State step(const State& z, const PhysParams& params, const GalerkinConfig& cfg);
Trajectory simulate(const State& z0, const PhysParams& params, const GalerkinConfig& cfg);

Snapshot to_snapshot(const State& z, double time);
State from_snapshot(const Snapshot& snap);

enum class InitialKind { random_band, single_mode, tilt_axis };

struct InitialSpec {
  InitialKind kind = InitialKind::random_band;
  double amplitude = 1e-3;
  std::uint64_t seed = 1;
  double envelope = 1.0;           ///< Gaussian width exp(-|m|^2 / (2 s^2)) of random coefficients
  int axis_band = 0;               ///< band of the axis perturbation; 0 means n/2
  std::array<int, 3> mode{1, 0, 0};  ///< single-mode wavenumber (integer lattice)
};

struct InitialData {
  State state;
  double spectrum_deviation_exact = 0.0;      ///< before band projection
  double spectrum_deviation_projected = 0.0;  ///< after projection to band 2n
  double k_sup = 0.0;
};

/// Throws ConfigError when sup |K0| >= min(lambda/2, |nu - lambda|).
InitialData initial_data(const InitialSpec& spec, const PhysParams& params, const GalerkinConfig& cfg,
                         const GridPtr& grid);

/// Pointwise J = nu n(x)n(x)^T + lambda (I - n(x)n(x)^T) - J_eq as grid samples.
PhysicalField inertia_from_axis(const PhysicalField& axis, const PhysParams& params);

}  // namespace micropolar
