#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "micropolar/galerkin.hpp"
#include "micropolar/params.hpp"

namespace micropolar::app {

enum class ScenarioKind { simulate, scan };

enum class Check { energy, ed_residual, persistence, rigidity, transport, decay, symmetry, stability };

std::string to_string(Check c);

struct DiagnosticsSpec {
  int M = 4;
  int j_max = 2;
  bool interactions = true;
  double lp = 2.0;  ///< exponent of the transport norms
};

/// Pass thresholds used by verify.
struct Thresholds {
  double persistence = 1e-6;
  double rigidity = 1e-10;
  double transport = 0.0;
  double symmetry = 1e-12;    ///< Hermitian and matrix symmetry, absolute on coefficients
  double divergence = 1e-10;  ///< max |k . u_k| / (2 pi)
  double ed_residual = 0.05;  ///< max |residual| / max D_sum_low after residual_t0
  double residual_t0 = 1.0;
  double decay_t0 = 1.0;
  double decay_t1 = 1e300;  ///< clipped to the run's end
  double min_exponent = 0.0;
  double monotone_tol = 1e-9;
};

struct Scenario {
  std::string name;
  std::string source;
  ScenarioKind kind = ScenarioKind::simulate;
  PhysParams params;
  GalerkinConfig galerkin;
  InitialSpec initial;
  bool seed_given = false;
  DiagnosticsSpec diagnostics;
  int scan_k_max = 16;
  double scan_tol = 1e-10;
  std::vector<Check> checks;
  Thresholds thresholds;
  std::filesystem::path output;

  bool enabled(Check c) const;
  /// Number of snapshots the run will write.
  int snapshot_count() const;
};

/// Strict parser: unknown keys, missing seeds and inconsistent checks raise ConfigError with file:line.
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace micropolar::app
