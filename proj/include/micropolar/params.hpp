#pragma once

#include <filesystem>
#include <string>

namespace YAML {
class Node;
}

namespace micropolar {

/// Physical constants of the anisotropic micropolar fluid.
struct PhysParams {
  double mu = 1.0;
  double kappa = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double tau = 1.0;
  double lambda = 1.0;  ///< repeated microinertia eigenvalue
  double nu = 2.0;      ///< microinertia eigenvalue along the torque axis

  double alpha_tilde() const { return alpha + 4.0 * beta / 3.0; }
  double gamma_tilde() const { return beta + gamma; }
  double tau_tilde() const { return tau / (2.0 * kappa); }
  /// Velocity diffusion coefficient mu + kappa/2.
  double velocity_diffusion() const { return mu + 0.5 * kappa; }
  bool oblate() const { return nu > lambda; }
  /// Weight tau_tilde^2 / (nu - lambda) of the a-energy.
  double a_weight() const;

  /// Throws ConfigError naming the offending constant.
  void validate() const;

  static PhysParams unit_oblate() { return {}; }
  static PhysParams unit_oblong() {
    PhysParams p;
    p.lambda = 2.0;
    p.nu = 1.0;
    return p;
  }
};

/// Reads a mapping with keys mu, kappa, alpha, beta, gamma, tau, lambda, nu.
/// Unknown or missing keys are rejected with the source line.
PhysParams params_from_node(const YAML::Node& node, const std::string& source);
PhysParams load_params(const std::filesystem::path& path);
PhysParams parse_params(const std::string& text, const std::string& source = "<string>");

}  // namespace micropolar
