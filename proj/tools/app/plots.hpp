#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace micropolar::app {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, y;
  bool dashed = false;
};

/// Line plot on log-log axes; non-positive samples are dropped.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series);

/// Eigenvalue cloud in the complex plane with the half-slab {Re <= 0, |Im| <= im_bound} shaded.
void write_spectrum_svg(const std::filesystem::path& path, const std::string& title,
                        const std::vector<std::complex<double>>& eigenvalues, double im_bound);

}  // namespace micropolar::app
