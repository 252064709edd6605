#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "micropolar/diagnostics.hpp"
#include "micropolar/errors.hpp"
#include "micropolar/fields.hpp"
#include "micropolar/rigidity.hpp"
#include "micropolar/spectrum.hpp"
#include "plots.hpp"

namespace micropolar::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::ofstream create(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  os << std::setprecision(17);
  return os;
}

json load_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("missing artifact " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("corrupt artifact " + p.string() + ": " + e.what());
  }
}

std::string mode_str(const std::array<int, 3>& m) {
  return "(" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + ")";
}

std::string point_str(const Grid& g, std::size_t p) {
  const std::size_t n = static_cast<std::size_t>(g.points());
  std::ostringstream os;
  os << "x=(" << double(p / (n * n)) / n << "," << double((p / n) % n) / n << "," << double(p % n) / n << ")";
  return os.str();
}

json params_json(const PhysParams& p) {
  return {{"mu", p.mu},       {"kappa", p.kappa}, {"alpha", p.alpha},   {"beta", p.beta},
          {"gamma", p.gamma}, {"tau", p.tau},     {"lambda", p.lambda}, {"nu", p.nu}};
}

json galerkin_json(const GalerkinConfig& g) {
  return {{"n", g.n},
          {"points", g.resolved_points()},
          {"shape", g.shape == BandShape::box ? "box" : "ball"},
          {"stepper", g.stepper == Stepper::rk4 ? "rk4" : "if_rk4"},
          {"closure", g.closure == Closure::galerkin ? "galerkin" : "continuous"},
          {"dt", g.dt},
          {"t_end", g.t_end},
          {"snapshot_every", g.snapshot_every},
          {"cg_tol", g.cg_tol},
          {"blowup_threshold", g.blowup_threshold}};
}

std::string initial_kind(InitialKind k) {
  switch (k) {
    case InitialKind::random_band: return "random_band";
    case InitialKind::single_mode: return "single_mode";
    case InitialKind::tilt_axis: return "tilt_axis";
  }
  return "?";
}

/// Column name -> values, from diagnostics.csv or diagnostics.json.
std::map<std::string, std::vector<double>> load_series(const fs::path& dir) {
  std::map<std::string, std::vector<double>> cols;
  if (fs::exists(dir / "diagnostics.csv")) {
    std::ifstream in(dir / "diagnostics.csv");
    std::string line;
    std::vector<std::string> head;
    if (std::getline(in, line)) {
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) head.push_back(c);
    }
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::size_t i = 0;
      for (std::string c; std::getline(ss, c, ',') && i < head.size(); ++i) cols[head[i]].push_back(std::stod(c));
    }
    return cols;
  }
  if (fs::exists(dir / "diagnostics.json")) {
    for (const auto& row : load_json(dir / "diagnostics.json"))
      for (const auto& [k, v] : row.items())
        if (v.is_number()) cols[k].push_back(v.get<double>());
    return cols;
  }
  throw ConfigError("missing artifact " + (dir / "diagnostics.csv").string() + " (or diagnostics.json)");
}

const std::vector<double>& column(const std::map<std::string, std::vector<double>>& s, const std::string& name) {
  auto it = s.find(name);
  if (it == s.end()) throw ConfigError("diagnostics table has no column '" + name + "'");
  return it->second;
}

struct DecaySummary {
  json j;
  std::vector<double> envelope_t, envelope;
};

DecaySummary summarize_decay(const std::vector<double>& t, const std::vector<double>& e, int M,
                             const Thresholds& th, double t_end) {
  DecaySummary out;
  const double t0 = th.decay_t0, t1 = std::min(th.decay_t1, t_end);
  out.j["window"] = {t0, t1};
  out.j["monotone_after_t0"] = non_increasing_after(t, e, t0, th.monotone_tol);
  try {
    const DecayFit f = decay_fit(t, e, t0, t1);
    out.j["exponent"] = f.exponent;
    out.j["prefactor"] = f.prefactor;
    out.j["points"] = f.points;
  } catch (const std::invalid_argument& ex) {
    out.j["exponent"] = nullptr;
    out.j["note"] = ex.what();
  }
  const int Mb = std::max(M, 2);
  out.j["M"] = Mb;
  out.j["reference_rate"] = 2.0 * Mb - 2.0;
  try {
    const double c = fit_bihari_constant(t, e, Mb, t0, t1);
    std::size_t i0 = 0;
    while (i0 < t.size() && t[i0] < t0) ++i0;
    out.j["bihari_C"] = c;
    out.j["bihari_t0"] = t[i0];
    out.j["bihari_E0"] = e[i0];
    if (std::isfinite(c) && e[i0] > 0)
      for (std::size_t i = i0; i < t.size() && t[i] <= t1; ++i) {
        out.envelope_t.push_back(t[i]);
        out.envelope.push_back(bihari_envelope(e[i0], c, Mb, t[i] - t[i0]));
      }
  } catch (const std::invalid_argument& ex) {
    out.j["bihari_C"] = nullptr;
  }
  return out;
}

void energy_plot(const fs::path& dir, const std::string& name, const std::vector<double>& t,
                 const std::vector<double>& e, const DecaySummary& d) {
  std::vector<Series> s;
  Series es{"E_low", "#1f77b4", {}, e};
  for (double x : t) es.x.push_back(1.0 + x);
  s.push_back(es);
  if (!d.envelope.empty()) {
    Series env{"Bihari envelope", "#d62728", {}, d.envelope, true};
    for (double x : d.envelope_t) env.x.push_back(1.0 + x);
    s.push_back(env);
  }
  write_loglog_svg(dir / "energy.svg", name + ": low-level energy", "1 + t", "E_low", s);
}

json check_json(const CheckResult& c) {
  return {{"name", c.name},   {"pass", c.pass},         {"value", c.value},
          {"threshold", c.threshold}, {"location", c.location}, {"detail", c.detail}};
}

void log_line(std::ostream* log, const std::string& s) {
  if (log) *log << s << std::endl;
}

}  // namespace

fs::path output_dir(const Scenario& sc, const fs::path& out) {
  if (!out.empty()) return out;
  if (!sc.output.empty()) return sc.output;
  return fs::path("out") / sc.name;
}

RunResult run(const Scenario& sc, const RunOptions& opt) {
  return sc.kind == ScenarioKind::scan ? run_scan(sc, opt) : run_simulation(sc, opt);
}

RunResult run_simulation(const Scenario& scenario, const RunOptions& opt) {
  Scenario sc = scenario;
  if (opt.seed) sc.initial.seed = *opt.seed;
  const fs::path dir = output_dir(sc, opt.out);
  fs::create_directories(dir / "snapshots");

  const PhysParams& p = sc.params;
  const GridPtr grid = sc.galerkin.make_grid();
  const InitialData init = initial_data(sc.initial, p, sc.galerkin, grid);
  const Integrator integrator(p, sc.galerkin);
  ReportOptions ro;
  ro.M = sc.diagnostics.M;
  ro.j_max = sc.diagnostics.j_max;
  ro.interactions = sc.diagnostics.interactions;

  std::vector<EnergyReport> reports;
  std::vector<TransportSample> transport;
  json snaps = json::array();
  json rigidity = json::array();

  auto observe = [&](int index, double t, const State& z) {
    std::ostringstream name;
    name << "snap_" << std::setw(5) << std::setfill('0') << index << ".mpf";
    write_snapshot(dir / "snapshots" / name.str(), to_snapshot(z, t));
    snaps.push_back({{"index", index}, {"time", t}, {"file", "snapshots/" + name.str()}});
    reports.push_back(energy_report(z, integrator.evaluator(), ro, t));
    transport.push_back(transport_sample(z, t, sc.diagnostics.lp));
    const PhysicalField K = to_physical(z.K);
    const RigidityReport rg = rigidity_check(K, p, sc.thresholds.rigidity);
    rigidity.push_back({{"time", t},
                        {"max_deviation", rg.max_deviation},
                        {"k_sup", rg.k_sup},
                        {"applicable", rg.applicable},
                        {"holds", rg.holds},
                        {"min_margin", rg.min_margin}});
    std::ostringstream msg;
    msg << "t=" << t << " E_low=" << reports.back().E_low << " dev=" << rg.max_deviation;
    log_line(opt.log, msg.str());
  };

  std::string status = "ok";
  std::string error;
  int code = 0;
  try {
    integrator.simulate(init.state, observe);
  } catch (const BlowupError& e) {
    status = "blowup", error = e.what(), code = 4;
  } catch (const NumericError& e) {
    status = "numeric", error = e.what(), code = 3;
  }

  if (opt.format == Format::json) {
    auto os = create(dir / "diagnostics.json");
    write_reports_json(os, reports);
  } else {
    auto os = create(dir / "diagnostics.csv");
    write_reports_csv(os, reports);
  }

  const TransportReport tr = transport.empty() ? TransportReport{} : transport_bound_check(transport, p);
  {
    auto os = create(dir / "transport.csv");
    os << "time,k_norm,theta_bar,bound\n";
    for (std::size_t i = 0; i < transport.size(); ++i)
      os << transport[i].time << ',' << transport[i].k_norm << ',' << transport[i].theta_bar << ','
         << tr.bounds[i] << '\n';
  }
  {
    auto os = create(dir / "rigidity.json");
    os << rigidity.dump(2) << '\n';
  }

  std::vector<double> t, e;
  for (const auto& r : reports) t.push_back(r.time), e.push_back(r.E_low);
  const DecaySummary decay = summarize_decay(t, e, sc.diagnostics.M, sc.thresholds, sc.galerkin.t_end);
  energy_plot(dir, sc.name, t, e, decay);

  json summary;
  summary["name"] = sc.name;
  summary["status"] = status;
  summary["final_time"] = t.empty() ? 0.0 : t.back();
  summary["decay"] = decay.j;
  if (reports.size() >= 3 && ro.interactions && ro.j_max >= 2) {
    const ResidualSeries res = ed_residual(reports);
    double scale = 0.0, late = 0.0;
    for (const auto& r : reports) scale = std::max(scale, r.D_sum_low);
    for (std::size_t i = 0; i < res.times.size(); ++i)
      if (res.times[i] >= sc.thresholds.residual_t0) late = std::max(late, std::abs(res.residuals[i]));
    summary["ed_residual"] = {{"max_abs", res.max_abs},
                              {"rms", res.rms},
                              {"max_abs_after_t0", late},
                              {"t0", sc.thresholds.residual_t0},
                              {"dissipation_scale", scale}};
  }
  double dev = 0.0, margin = std::numeric_limits<double>::infinity();
  for (const auto& r : rigidity) {
    dev = std::max(dev, r["max_deviation"].get<double>());
    if (r["applicable"].get<bool>()) margin = std::min(margin, r["min_margin"].get<double>());
  }
  summary["persistence_max_deviation"] = dev;
  summary["rigidity_min_margin"] = std::isfinite(margin) ? json(margin) : json(nullptr);
  summary["transport"] = {{"holds", tr.holds}, {"min_margin", tr.min_margin}, {"p", sc.diagnostics.lp}};
  summary["initial"] = {{"spectrum_deviation", init.spectrum_deviation_projected}, {"k_sup", init.k_sup}};
  if (!reports.empty()) {
    summary["E_low_initial"] = reports.front().E_low;
    summary["E_low_final"] = reports.back().E_low;
  }
  {
    auto os = create(dir / "summary.json");
    os << summary.dump(2) << '\n';
  }

  json manifest;
  manifest["name"] = sc.name;
  manifest["kind"] = "simulate";
  manifest["scenario"] = sc.source;
  manifest["status"] = status;
  if (!error.empty()) manifest["error"] = error;
  manifest["seed"] = sc.initial.seed;
  manifest["params"] = params_json(p);
  manifest["galerkin"] = galerkin_json(sc.galerkin);
  manifest["initial"] = {{"kind", initial_kind(sc.initial.kind)},
                         {"amplitude", sc.initial.amplitude},
                         {"envelope", sc.initial.envelope},
                         {"axis_band", sc.initial.axis_band},
                         {"mode", sc.initial.mode}};
  manifest["diagnostics"] = {{"M", ro.M}, {"j_max", ro.j_max}, {"interactions", ro.interactions},
                             {"lp", sc.diagnostics.lp},
                             {"file", opt.format == Format::json ? "diagnostics.json" : "diagnostics.csv"}};
  manifest["snapshots"] = snaps;
  manifest["artifacts"] = {"summary.json", "transport.csv", "rigidity.json", "energy.svg",
                           opt.format == Format::json ? "diagnostics.json" : "diagnostics.csv"};
  {
    auto os = create(dir / "manifest.json");
    os << manifest.dump(2) << '\n';
  }

  if (code == 4) throw BlowupError(error);
  if (code == 3) throw NumericError(error);
  return {dir, static_cast<int>(snaps.size())};
}

RunResult run_scan(const Scenario& sc, const RunOptions& opt) {
  const fs::path dir = output_dir(sc, opt.out);
  fs::create_directories(dir);
  log_line(opt.log, "scanning |m|_inf <= " + std::to_string(sc.scan_k_max));
  const SymbolSpectrum s = eigen_scan(sc.params, sc.scan_k_max);
  const StabilityVerdict v = classify_stability(s, sc.params, sc.scan_tol);
  log_line(opt.log, v.text);
  if (opt.format == Format::json) {
    auto os = create(dir / "spectrum.json");
    write_scan_json(os, s, v);
  } else {
    auto os = create(dir / "spectrum.csv");
    write_scan_csv(os, s);
  }
  json verdict = {{"verdict", to_string(v.verdict)},
                  {"text", v.text},
                  {"max_re", v.max_re},
                  {"witness", v.witness},
                  {"witness_k", {kTwoPi * v.witness[0], kTwoPi * v.witness[1], kTwoPi * v.witness[2]}},
                  {"matches_inertia", v.matches_inertia},
                  {"oblate", sc.params.oblate()},
                  {"k_max", s.k_max},
                  {"im_bound", s.im_bound},
                  {"failures", s.failures.size()}};
  json shells = json::array();
  for (const auto& sh : s.shells) shells.push_back({{"shell", sh.shell}, {"tracked_re", sh.tracked_re}, {"at", sh.at}});
  verdict["shells"] = shells;
  {
    auto os = create(dir / "verdict.json");
    os << verdict.dump(2) << '\n';
  }
  std::vector<std::complex<double>> cloud;
  for (const auto& pt : s.points) cloud.insert(cloud.end(), pt.eigenvalues.begin(), pt.eigenvalues.end());
  write_spectrum_svg(dir / "spectrum.svg", sc.name + ": deflated symbol spectrum", cloud, s.im_bound);
  {
    auto os = create(dir / "summary.json");
    os << json{{"name", sc.name}, {"status", "ok"}, {"verdict", verdict}}.dump(2) << '\n';
  }
  json manifest = {{"name", sc.name},
                   {"kind", "scan"},
                   {"scenario", sc.source},
                   {"status", "ok"},
                   {"params", params_json(sc.params)},
                   {"scan", {{"k_max", sc.scan_k_max}, {"tol", sc.scan_tol}}},
                   {"snapshots", json::array()},
                   {"artifacts",
                    {"verdict.json", "summary.json", "spectrum.svg",
                     opt.format == Format::json ? "spectrum.json" : "spectrum.csv"}}};
  auto os = create(dir / "manifest.json");
  os << manifest.dump(2) << '\n';
  return {dir, 0};
}

std::vector<CheckResult> snapshot_integrity(const Snapshot& snap, const Thresholds& th, const std::string& file) {
  CheckResult sym{"symmetry", true, 0.0, th.symmetry, "", ""};
  CheckResult band{"band", true, 0.0, 0.0, "", ""};
  CheckResult div{"divergence", true, 0.0, th.divergence, "", ""};
  auto at = [&](const std::string& field, int c, const std::array<int, 3>& m) {
    return file + " t=" + std::to_string(snap.time) + " field " + field + " component " + std::to_string(c) +
           " mode " + mode_str(m);
  };
  for (const auto& nf : snap.fields) {
    const SpectralField& f = nf.field;
    const Grid& g = f.grid();
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      const auto& m = g.mode(s);
      for (int c = 0; c < f.components(); ++c) {
        const cplx v = f.at(c, s);
        if (g.band_of(s) > f.band() && std::abs(v) > band.value) {
          band.value = std::abs(v);
          band.location = at(nf.name, c, m);
        }
        if (m[2] == 0) {
          const auto t = g.slot_of({-m[0], -m[1], 0});
          if (t >= 0) {
            const double d = std::abs(v - std::conj(f.at(c, static_cast<std::size_t>(t))));
            if (d > sym.value) {
              sym.value = d;
              sym.location = at(nf.name, c, m) + " (Hermitian pair)";
            }
          }
        }
      }
      if (f.rank() == Rank::matrix)
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            const double d = std::abs(f.at(3 * i + j, s) - f.at(3 * j + i, s));
            if (d > sym.value) {
              sym.value = d;
              sym.location = file + " t=" + std::to_string(snap.time) + " field " + nf.name + " entries (" +
                             std::to_string(i + 1) + std::to_string(j + 1) + ") vs (" + std::to_string(j + 1) +
                             std::to_string(i + 1) + ") mode " + mode_str(m);
            }
          }
      if (nf.name == "u" && f.rank() == Rank::vector) {
        const auto k = g.wavevector(s);
        const double d = std::abs(k[0] * f.at(0, s) + k[1] * f.at(1, s) + k[2] * f.at(2, s)) / kTwoPi;
        if (d > div.value) {
          div.value = d;
          div.location = at("u", 0, m);
        }
      }
    }
    if (nf.name == "K" && f.rank() != Rank::symmetric && f.rank() != Rank::matrix) {
      sym.pass = false;
      sym.detail = "K is stored with a non-matrix rank";
      sym.location = file;
    }
  }
  sym.pass = sym.pass && sym.value <= th.symmetry;
  band.pass = band.value == 0.0;
  div.pass = div.value <= th.divergence;
  if (sym.pass) sym.location.clear();
  if (band.pass) band.location.clear();
  if (div.pass) div.location.clear();
  return {sym, band, div};
}

VerifyReport verify(const Scenario& sc, const fs::path& dir) {
  const json manifest = load_json(dir / "manifest.json");
  VerifyReport rep;
  auto add = [&](CheckResult c) {
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  };
  const Thresholds& th = sc.thresholds;
  const PhysParams& p = sc.params;

  if (sc.kind == ScenarioKind::scan) {
    const json v = load_json(dir / "verdict.json");
    if (sc.enabled(Check::stability)) {
      CheckResult c{"stability", v.at("matches_inertia").get<bool>(), v.at("max_re").get<double>(), sc.scan_tol,
                    "", v.at("text").get<std::string>()};
      if (v.at("verdict") == "unstable") c.location = "witness m=" + v.at("witness").dump();
      add(c);
    }
    return rep;
  }

  if (manifest.value("status", "ok") != "ok")
    add({"status", false, 0.0, 0.0, "", "run ended with status " + manifest.value("status", "?")});

  struct Snap {
    std::string file;
    Snapshot s;
  };
  std::vector<Snap> snaps;
  const bool need_snaps = sc.enabled(Check::symmetry) || sc.enabled(Check::persistence) ||
                          sc.enabled(Check::rigidity) || sc.enabled(Check::transport);
  if (need_snaps) {
    GridPtr grid;
    for (const auto& e : manifest.at("snapshots")) {
      const auto file = e.at("file").get<std::string>();
      if (!fs::exists(dir / file)) throw ConfigError("missing artifact " + (dir / file).string());
      Snapshot s = read_snapshot(dir / file, grid);
      grid = s.fields.front().field.grid_ptr();
      snaps.push_back({file, std::move(s)});
    }
    if (snaps.empty()) throw ConfigError("manifest lists no snapshots");
  }

  if (sc.enabled(Check::symmetry)) {
    std::vector<CheckResult> worst;
    for (const auto& sn : snaps) {
      auto r = snapshot_integrity(sn.s, th, sn.file);
      if (worst.empty()) worst = r;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i].value > worst[i].value || (!r[i].pass && worst[i].pass)) worst[i] = r[i];
    }
    for (auto& c : worst) add(c);
  }

  // Snapshot-based checks need symmetric K; integrity failures above already report the tampering.
  auto symmetric_k = [&](const Snap& sn) -> std::optional<SpectralField> {
    const SpectralField& K = sn.s.get("K");
    if (K.rank() == Rank::symmetric) return K;
    return std::nullopt;
  };

  if (sc.enabled(Check::persistence)) {
    CheckResult c{"persistence", true, 0.0, th.persistence, "", ""};
    for (const auto& sn : snaps) {
      const auto K = symmetric_k(sn);
      if (!K) {
        c.pass = false, c.location = sn.file, c.detail = "K is not stored as a symmetric field";
        continue;
      }
      const Persistence ps = spectrum_persistence_check(inertia_samples(*K, p), p);
      if (ps.max_deviation > c.value) {
        c.value = ps.max_deviation;
        c.location = sn.file + " t=" + std::to_string(sn.s.time) + " " + point_str(K->grid(), ps.at);
      }
    }
    c.pass = c.pass && c.value <= th.persistence;
    add(c);
  }

  if (sc.enabled(Check::rigidity)) {
    CheckResult c{"rigidity", true, std::numeric_limits<double>::infinity(), -th.rigidity, "", ""};
    int applicable = 0;
    for (const auto& sn : snaps) {
      const auto K = symmetric_k(sn);
      if (!K) continue;
      const RigidityReport r = rigidity_check(to_physical(*K), p, th.rigidity);
      if (!r.applicable) continue;
      ++applicable;
      if (r.min_margin < c.value) {
        c.value = r.min_margin;
        c.location = sn.file + " t=" + std::to_string(sn.s.time) + " " + point_str(K->grid(), r.margin_at);
      }
      c.pass = c.pass && r.holds;
    }
    if (applicable == 0) c.value = 0.0;
    c.detail = "min over snapshots with ||K||_inf <= nu - lambda of 2|a| - |K|; " + std::to_string(applicable) +
               " of " + std::to_string(snaps.size()) + " snapshots applicable";
    if (c.pass) c.location.clear();
    add(c);
  }

  if (sc.enabled(Check::transport)) {
    std::vector<TransportSample> samples;
    for (const auto& sn : snaps) {
      State z{sn.s.get("u"), sn.s.get("theta"), sn.s.get("K")};
      samples.push_back(transport_sample(z, sn.s.time, sc.diagnostics.lp));
    }
    const TransportReport tr = transport_bound_check(samples, p, th.transport);
    CheckResult c{"transport", tr.holds, tr.min_margin, -th.transport, "", "min of bound - ||K(t)||"};
    if (!tr.holds) c.location = snaps[static_cast<std::size_t>(tr.worst_index)].file;
    add(c);
  }

  const bool need_series = sc.enabled(Check::energy) || sc.enabled(Check::ed_residual) || sc.enabled(Check::decay);
  if (need_series) {
    const auto series = load_series(dir);
    const auto& t = column(series, "time");
    if (sc.enabled(Check::energy)) {
      CheckResult c{"energy", true, std::numeric_limits<double>::infinity(), 0.0, "", "min energy, all finite"};
      for (const auto& [name, vals] : series)
        for (std::size_t i = 0; i < vals.size(); ++i) {
          if (!std::isfinite(vals[i])) {
            c.pass = false;
            c.location = name + " at t=" + std::to_string(t[i]);
          }
          if ((name[0] == 'E' || name[0] == 'D') && vals[i] < c.value) c.value = vals[i];
        }
      c.pass = c.pass && c.value >= 0.0;
      add(c);
    }
    if (sc.enabled(Check::ed_residual)) {
      const ResidualSeries res = ed_residual(t, column(series, "E_tilde_low"), column(series, "D_sum_low"),
                                             column(series, "I_bar_low"));
      double scale = 0.0;
      for (double d : column(series, "D_sum_low")) scale = std::max(scale, d);
      CheckResult c{"ed_residual", true, 0.0, th.ed_residual, "", ""};
      for (std::size_t i = 0; i < res.times.size(); ++i) {
        if (res.times[i] < th.residual_t0) continue;
        const double r = scale > 0 ? std::abs(res.residuals[i]) / scale : std::abs(res.residuals[i]);
        if (r > c.value) c.value = r, c.location = "t=" + std::to_string(res.times[i]);
      }
      c.detail = "centered-difference residual relative to max D_sum_low, t >= " + std::to_string(th.residual_t0);
      c.pass = c.value <= th.ed_residual;
      add(c);
    }
    if (sc.enabled(Check::decay)) {
      const auto& e = column(series, "E_low");
      const DecaySummary d = summarize_decay(t, e, sc.diagnostics.M, th, sc.galerkin.t_end);
      CheckResult c{"decay", true, 0.0, th.min_exponent, "", ""};
      const bool zero = std::all_of(e.begin(), e.end(), [](double x) { return x == 0.0; });
      if (zero) {
        c.detail = "energy identically zero";
      } else {
        c.pass = d.j.at("monotone_after_t0").get<bool>();
        if (!c.pass) c.detail = "E_low increases after t0";
        if (d.j.at("exponent").is_null()) {
          c.pass = false;
          c.detail = "no decay fit";
        } else {
          c.value = d.j.at("exponent").get<double>();
          c.pass = c.pass && c.value >= th.min_exponent;
        }
        for (std::size_t i = 0; i < d.envelope.size(); ++i) {
          const auto it = std::find(t.begin(), t.end(), d.envelope_t[i]);
          const double ei = e[static_cast<std::size_t>(it - t.begin())];
          if (ei > d.envelope[i] * (1.0 + 1e-12)) {
            c.pass = false;
            c.location = "t=" + std::to_string(d.envelope_t[i]);
            c.detail = "E_low exceeds the Bihari envelope";
          }
        }
        if (c.detail.empty()) c.detail = "fitted exponent over the decay window; monotone and under the Bihari envelope";
      }
      add(c);
    }
  }
  return rep;
}

void write_verify_json(std::ostream& os, const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  os << json{{"pass", r.pass}, {"checks", checks}}.dump(2) << '\n';
}

void report(const Scenario& sc, const fs::path& dir, Format format, std::ostream& os) {
  const json summary = load_json(dir / "summary.json");
  if (sc.kind == ScenarioKind::simulate) {
    const auto series = load_series(dir);
    const auto& t = column(series, "time");
    const auto& e = column(series, "E_low");
    energy_plot(dir, sc.name, t, e, summarize_decay(t, e, sc.diagnostics.M, sc.thresholds, sc.galerkin.t_end));
  }
  if (format == Format::json) {
    os << summary.dump(2) << '\n';
    return;
  }
  os << "key,value\n" << std::setprecision(17);
  const json flat = summary.flatten();
  for (const auto& [k, v] : flat.items()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

}  // namespace micropolar::app
