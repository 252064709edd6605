#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "app/app.hpp"
#include "micropolar/errors.hpp"
#include "micropolar/execution.hpp"

using namespace micropolar;

namespace {

int threads_from_env() {
  const char* v = std::getenv("MICROPOLAR_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError(std::string("MICROPOLAR_THREADS must be a positive integer, got '") + v + "'");
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Anisotropic micropolar fluid: Galerkin runs, symbol scans and checks"};
  cli.require_subcommand(1);

  std::string scenario_file, out_dir, format = "csv";
  std::uint64_t seed = 0;
  int threads = 0;
  bool quiet = false;

  auto common = [&](CLI::App* c) {
    c->add_option("--scenario", scenario_file, "scenario YAML file")->required()->check(CLI::ExistingFile);
    c->add_option("--out", out_dir, "output directory (default: the scenario's output, else out/<name>)");
    c->add_option("--threads", threads, "OpenMP threads; overrides MICROPOLAR_THREADS")->check(CLI::PositiveNumber);
    c->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));
    c->add_flag("--quiet", quiet, "no progress output");
  };
  auto* run = cli.add_subcommand("run", "run the scenario and write its artifacts");
  common(run);
  run->add_option("--seed", seed, "override the initial-data seed");
  auto* scan = cli.add_subcommand("scan", "eigenvalue scan of the linearized symbol");
  common(scan);
  auto* verify = cli.add_subcommand("verify", "check the artifacts of a previous run");
  common(verify);
  auto* report = cli.add_subcommand("report", "print the stored summary and redraw plots");
  common(report);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const int env = threads_from_env();
    if (threads > 0) set_thread_count(threads);
    else if (env > 0) set_thread_count(env);

    app::Scenario sc = app::load_scenario(scenario_file);
    app::RunOptions opt;
    opt.out = out_dir;
    opt.format = format == "json" ? app::Format::json : app::Format::csv;
    opt.log = quiet ? nullptr : &std::cerr;
    if (run->parsed() && run->count("--seed")) opt.seed = seed;
    const auto dir = app::output_dir(sc, opt.out);

    if (run->parsed()) {
      const auto r = app::run(sc, opt);
      std::cout << "wrote " << r.dir.string() << " (" << r.snapshots << " snapshots)\n";
    } else if (scan->parsed()) {
      sc.kind = app::ScenarioKind::scan;
      app::run_scan(sc, opt);
      std::ifstream in(dir / "verdict.json");
      std::cout << in.rdbuf();
    } else if (verify->parsed()) {
      const auto rep = app::verify(sc, dir);
      std::ofstream f(dir / "verify.json");
      app::write_verify_json(f, rep);
      app::write_verify_json(std::cout, rep);
      return rep.pass ? 0 : 1;
    } else if (report->parsed()) {
      app::report(sc, dir, opt.format, std::cout);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const BlowupError& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return 4;
  }
}
