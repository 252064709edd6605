#include "scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "micropolar/errors.hpp"

namespace micropolar::app {

namespace {

struct Reader {
  std::string source;

  std::string at(const YAML::Node& n) const {
    const auto m = n.Mark();
    return m.line < 0 ? source : source + ":" + std::to_string(m.line + 1);
  }

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const { throw ConfigError(at(n) + ": " + msg); }

  template <class T>
  T as(const YAML::Node& n, const std::string& key) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, "bad value for '" + key + "'");
    }
  }

  /// Walks a mapping, calling the handler of each key; unknown and duplicate keys are errors.
  void section(const YAML::Node& node, const std::string& what,
               const std::map<std::string, std::function<void(const YAML::Node&)>>& handlers) const {
    if (!node.IsMap()) fail(node, "'" + what + "' must be a mapping");
    std::map<std::string, bool> seen;
    for (const auto& kv : node) {
      const auto key = as<std::string>(kv.first, what);
      auto it = handlers.find(key);
      if (it == handlers.end()) fail(kv.first, "unknown key '" + key + "' in " + what);
      if (seen[key]) fail(kv.first, "duplicate key '" + key + "'");
      seen[key] = true;
      it->second(kv.second);
    }
  }
};

Check check_from(const Reader& rd, const YAML::Node& n) {
  static const std::map<std::string, Check> names{{"energy", Check::energy},
                                                  {"ed_residual", Check::ed_residual},
                                                  {"persistence", Check::persistence},
                                                  {"rigidity", Check::rigidity},
                                                  {"transport", Check::transport},
                                                  {"decay", Check::decay},
                                                  {"symmetry", Check::symmetry},
                                                  {"stability", Check::stability}};
  const auto s = rd.as<std::string>(n, "checks");
  auto it = names.find(s);
  if (it == names.end()) rd.fail(n, "unknown check '" + s + "'");
  return it->second;
}

}  // namespace

std::string to_string(Check c) {
  switch (c) {
    case Check::energy: return "energy";
    case Check::ed_residual: return "ed_residual";
    case Check::persistence: return "persistence";
    case Check::rigidity: return "rigidity";
    case Check::transport: return "transport";
    case Check::decay: return "decay";
    case Check::symmetry: return "symmetry";
    case Check::stability: return "stability";
  }
  return "?";
}

bool Scenario::enabled(Check c) const {
  for (Check x : checks)
    if (x == c) return true;
  return false;
}

int Scenario::snapshot_count() const {
  const auto steps = static_cast<long>(std::llround(galerkin.t_end / galerkin.dt));
  return static_cast<int>(steps / galerkin.snapshot_every) + 1 + (steps % galerkin.snapshot_every != 0 ? 1 : 0);
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  Reader rd{source};
  Scenario sc;
  sc.source = source;
  bool have_name = false, have_params = false;
  YAML::Node kind_node, checks_node, initial_node;

  auto positive_int = [&](const YAML::Node& n, const std::string& key, int& out, int lo) {
    out = rd.as<int>(n, key);
    if (out < lo) rd.fail(n, "'" + key + "' must be at least " + std::to_string(lo));
  };
  auto number = [&](const YAML::Node& n, const std::string& key, double& out) {
    out = rd.as<double>(n, key);
    if (!std::isfinite(out)) rd.fail(n, "'" + key + "' must be finite");
  };

  rd.section(root, "scenario",
             {{"name", [&](const YAML::Node& n) { sc.name = rd.as<std::string>(n, "name"), have_name = true; }},
              {"kind",
               [&](const YAML::Node& n) {
                 kind_node = n;
                 const auto k = rd.as<std::string>(n, "kind");
                 if (k == "simulate") sc.kind = ScenarioKind::simulate;
                 else if (k == "scan") sc.kind = ScenarioKind::scan;
                 else rd.fail(n, "kind must be 'simulate' or 'scan'");
               }},
              {"params",
               [&](const YAML::Node& n) {
                 sc.params = params_from_node(n, source);
                 have_params = true;
               }},
              {"galerkin",
               [&](const YAML::Node& n) {
                 auto& g = sc.galerkin;
                 rd.section(
                     n, "galerkin",
                     {{"n", [&](const YAML::Node& v) { positive_int(v, "n", g.n, 1); }},
                      {"points", [&](const YAML::Node& v) { positive_int(v, "points", g.points, 0); }},
                      {"shape",
                       [&](const YAML::Node& v) {
                         const auto s = rd.as<std::string>(v, "shape");
                         if (s == "box") g.shape = BandShape::box;
                         else if (s == "ball") g.shape = BandShape::ball;
                         else rd.fail(v, "shape must be 'box' or 'ball'");
                       }},
                      {"stepper",
                       [&](const YAML::Node& v) {
                         const auto s = rd.as<std::string>(v, "stepper");
                         if (s == "rk4") g.stepper = Stepper::rk4;
                         else if (s == "if_rk4") g.stepper = Stepper::if_rk4;
                         else rd.fail(v, "stepper must be 'rk4' or 'if_rk4'");
                       }},
                      {"closure",
                       [&](const YAML::Node& v) {
                         const auto s = rd.as<std::string>(v, "closure");
                         if (s == "galerkin") g.closure = Closure::galerkin;
                         else if (s == "continuous") g.closure = Closure::continuous;
                         else rd.fail(v, "closure must be 'galerkin' or 'continuous'");
                       }},
                      {"dt", [&](const YAML::Node& v) { number(v, "dt", g.dt); }},
                      {"t_end", [&](const YAML::Node& v) { number(v, "t_end", g.t_end); }},
                      {"snapshot_every", [&](const YAML::Node& v) { positive_int(v, "snapshot_every", g.snapshot_every, 1); }},
                      {"cg_tol", [&](const YAML::Node& v) { number(v, "cg_tol", g.cg_tol); }},
                      {"blowup_threshold", [&](const YAML::Node& v) { number(v, "blowup_threshold", g.blowup_threshold); }}});
                 try {
                   g.validate();
                 } catch (const ConfigError& e) {
                   rd.fail(n, e.what());
                 }
               }},
              {"initial",
               [&](const YAML::Node& n) {
                 initial_node = n;
                 auto& in = sc.initial;
                 rd.section(
                     n, "initial",
                     {{"kind",
                       [&](const YAML::Node& v) {
                         const auto s = rd.as<std::string>(v, "kind");
                         if (s == "random_band") in.kind = InitialKind::random_band;
                         else if (s == "single_mode") in.kind = InitialKind::single_mode;
                         else if (s == "tilt_axis") in.kind = InitialKind::tilt_axis;
                         else rd.fail(v, "initial kind must be random_band, single_mode or tilt_axis");
                       }},
                      {"amplitude",
                       [&](const YAML::Node& v) {
                         number(v, "amplitude", in.amplitude);
                         if (in.amplitude < 0) rd.fail(v, "amplitude must be non-negative");
                       }},
                      {"seed",
                       [&](const YAML::Node& v) {
                         in.seed = rd.as<std::uint64_t>(v, "seed");
                         sc.seed_given = true;
                       }},
                      {"envelope",
                       [&](const YAML::Node& v) {
                         number(v, "envelope", in.envelope);
                         if (!(in.envelope > 0)) rd.fail(v, "envelope must be positive");
                       }},
                      {"axis_band", [&](const YAML::Node& v) { positive_int(v, "axis_band", in.axis_band, 0); }},
                      {"mode",
                       [&](const YAML::Node& v) {
                         if (!v.IsSequence() || v.size() != 3) rd.fail(v, "mode must be a list of three integers");
                         for (int i = 0; i < 3; ++i) in.mode[i] = rd.as<int>(v[i], "mode");
                       }}});
               }},
              {"diagnostics",
               [&](const YAML::Node& n) {
                 auto& d = sc.diagnostics;
                 rd.section(n, "diagnostics",
                            {{"M", [&](const YAML::Node& v) { positive_int(v, "M", d.M, 1); }},
                             {"j_max",
                              [&](const YAML::Node& v) {
                                positive_int(v, "j_max", d.j_max, 0);
                                if (d.j_max > 2) rd.fail(v, "j_max above 2 is not supported by the evaluator");
                              }},
                             {"interactions", [&](const YAML::Node& v) { d.interactions = rd.as<bool>(v, "interactions"); }},
                             {"lp",
                              [&](const YAML::Node& v) {
                                number(v, "lp", d.lp);
                                if (d.lp < 1) rd.fail(v, "lp must be at least 1");
                              }}});
               }},
              {"scan",
               [&](const YAML::Node& n) {
                 rd.section(n, "scan",
                            {{"k_max", [&](const YAML::Node& v) { positive_int(v, "k_max", sc.scan_k_max, 0); }},
                             {"tol", [&](const YAML::Node& v) { number(v, "tol", sc.scan_tol); }}});
               }},
              {"checks",
               [&](const YAML::Node& n) {
                 checks_node = n;
                 if (!n.IsSequence()) rd.fail(n, "checks must be a list");
                 for (const auto& c : n) sc.checks.push_back(check_from(rd, c));
               }},
              {"thresholds",
               [&](const YAML::Node& n) {
                 auto& t = sc.thresholds;
                 std::map<std::string, std::function<void(const YAML::Node&)>> h;
                 for (auto [key, slot] : std::initializer_list<std::pair<const char*, double*>>{
                          {"persistence", &t.persistence},
                          {"rigidity", &t.rigidity},
                          {"transport", &t.transport},
                          {"symmetry", &t.symmetry},
                          {"divergence", &t.divergence},
                          {"ed_residual", &t.ed_residual},
                          {"residual_t0", &t.residual_t0},
                          {"decay_t0", &t.decay_t0},
                          {"decay_t1", &t.decay_t1},
                          {"min_exponent", &t.min_exponent},
                          {"monotone_tol", &t.monotone_tol}})
                   h[key] = [&, key = std::string(key), slot](const YAML::Node& v) { number(v, key, *slot); };
                 rd.section(n, "thresholds", h);
               }},
              {"output", [&](const YAML::Node& n) { sc.output = rd.as<std::string>(n, "output"); }}});

  if (!have_name) rd.fail(root, "missing key 'name'");
  if (!have_params) rd.fail(root, "missing key 'params'");
  if (sc.name.empty() || sc.name.find('/') != std::string::npos) rd.fail(root, "name must be a plain non-empty word");

  if (sc.kind == ScenarioKind::simulate) {
    const bool randomized = sc.initial.kind != InitialKind::single_mode;
    if (randomized && !sc.seed_given)
      rd.fail(initial_node ? initial_node : root, "initial.seed is required for randomized initial data");
    const int snaps = sc.snapshot_count();
    for (Check c : sc.checks) {
      if (c == Check::stability) rd.fail(checks_node, "check 'stability' needs kind: scan");
      if (c == Check::ed_residual && snaps < 3)
        rd.fail(checks_node, "ed_residual needs at least 3 snapshots, the run writes " + std::to_string(snaps));
      if (c == Check::ed_residual && !sc.diagnostics.interactions)
        rd.fail(checks_node, "ed_residual needs diagnostics.interactions: true");
      if (c == Check::ed_residual && sc.diagnostics.j_max < 2)
        rd.fail(checks_node, "ed_residual needs diagnostics.j_max: 2");
      if (c == Check::decay) {
        const double t1 = std::min(sc.thresholds.decay_t1, sc.galerkin.t_end);
        const double spacing = sc.galerkin.dt * sc.galerkin.snapshot_every;
        if (t1 <= sc.thresholds.decay_t0 || (t1 - sc.thresholds.decay_t0) / spacing < 4.0)
          rd.fail(checks_node, "decay needs at least 5 snapshots in [decay_t0, t_end]");
      }
    }
  } else {
    for (Check c : sc.checks)
      if (c != Check::stability) rd.fail(checks_node, "scan scenarios only support the 'stability' check");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

}  // namespace micropolar::app
