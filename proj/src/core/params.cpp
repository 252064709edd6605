#include "micropolar/params.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "micropolar/errors.hpp"

namespace micropolar {

namespace {

std::string where(const std::string& source, const YAML::Mark& mark) {
  if (mark.line < 0) return source;
  return source + ":" + std::to_string(mark.line + 1);
}

}  // namespace

double PhysParams::a_weight() const {
  const double t = tau_tilde();
  return t * t / (nu - lambda);
}

void PhysParams::validate() const {
  const std::array<std::pair<const char*, double>, 8> entries{{{"mu", mu},
                                                               {"kappa", kappa},
                                                               {"alpha", alpha},
                                                               {"beta", beta},
                                                               {"gamma", gamma},
                                                               {"tau", tau},
                                                               {"lambda", lambda},
                                                               {"nu", nu}}};
  for (const auto& [name, value] : entries)
    if (!(value > 0.0) || !std::isfinite(value))
      throw ConfigError(std::string("parameter '") + name + "' must be a positive finite number");
  if (nu == lambda) throw ConfigError("parameters 'lambda' and 'nu' must differ");
}

PhysParams params_from_node(const YAML::Node& node, const std::string& source) {
  if (!node.IsMap()) throw ConfigError(where(source, node.Mark()) + ": parameters must be a mapping");
  PhysParams p;
  std::array<std::pair<const char*, double*>, 8> slots{{{"mu", &p.mu},
                                                        {"kappa", &p.kappa},
                                                        {"alpha", &p.alpha},
                                                        {"beta", &p.beta},
                                                        {"gamma", &p.gamma},
                                                        {"tau", &p.tau},
                                                        {"lambda", &p.lambda},
                                                        {"nu", &p.nu}}};
  std::array<bool, 8> seen{};
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (key != slots[i].first) continue;
      known = true;
      if (seen[i]) throw ConfigError(where(source, kv.first.Mark()) + ": duplicate key '" + key + "'");
      seen[i] = true;
      try {
        *slots[i].second = kv.second.as<double>();
      } catch (const YAML::Exception&) {
        throw ConfigError(where(source, kv.second.Mark()) + ": '" + key + "' is not a number");
      }
    }
    if (!known) throw ConfigError(where(source, kv.first.Mark()) + ": unknown parameter '" + key + "'");
  }
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (!seen[i])
      throw ConfigError(where(source, node.Mark()) + ": missing parameter '" + slots[i].first + "'");
  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(where(source, node.Mark()) + ": " + e.what());
  }
  return p;
}

PhysParams parse_params(const std::string& text, const std::string& source) {
  YAML::Node node;
  try {
    node = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  return params_from_node(node, source);
}

PhysParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str(), path.string());
}

}  // namespace micropolar
