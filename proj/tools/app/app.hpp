#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "micropolar/snapshot.hpp"
#include "scenario.hpp"

namespace micropolar::app {

enum class Format { csv, json };

struct RunOptions {
  std::filesystem::path out;  ///< empty: the scenario's output, else out/<name>
  std::optional<std::uint64_t> seed;
  Format format = Format::csv;
  std::ostream* log = nullptr;
};

/// Directory a scenario writes to.
std::filesystem::path output_dir(const Scenario& sc, const std::filesystem::path& out);

struct RunResult {
  std::filesystem::path dir;
  int snapshots = 0;
};

/// Dispatches on the scenario kind. Writes manifest.json, summary.json and the artifacts of each phase.
RunResult run(const Scenario& sc, const RunOptions& opt);
RunResult run_simulation(const Scenario& sc, const RunOptions& opt);
RunResult run_scan(const Scenario& sc, const RunOptions& opt);

struct CheckResult {
  std::string name;
  bool pass = true;
  double value = 0.0;
  double threshold = 0.0;
  std::string location;  ///< where the worst value sits
  std::string detail;
};

struct VerifyReport {
  bool pass = true;
  std::vector<CheckResult> checks;
};

/// Throws ConfigError when an artifact is missing.
VerifyReport verify(const Scenario& sc, const std::filesystem::path& dir);
void write_verify_json(std::ostream& os, const VerifyReport& r);

/// Snapshot invariants: matrix symmetry of K, Hermitian symmetry on self-conjugate planes,
/// in-band storage and divergence-free velocity.
std::vector<CheckResult> snapshot_integrity(const Snapshot& snap, const Thresholds& t, const std::string& file);

/// Prints the stored diagnostics in the requested format and rewrites the plots.
void report(const Scenario& sc, const std::filesystem::path& dir, Format format, std::ostream& os);

}  // namespace micropolar::app
