#include <algorithm>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "micropolar/errors.hpp"
#include "micropolar/spectrum.hpp"

namespace micropolar {

SymbolSpectrum eigen_scan(const PhysParams& params, int k_max, Exec exec) {
  if (k_max < 1) throw ConfigError("eigen scan needs k_max >= 1");
  SymbolSpectrum out;
  out.k_max = k_max;
  const int w = 2 * k_max + 1;
  out.points.resize(static_cast<std::size_t>(w) * w * w);
  for_each_index(out.points.size(), exec, [&](std::size_t idx) {
    ScanPoint& pt = out.points[idx];
    const int i = static_cast<int>(idx / (w * w)), j = static_cast<int>((idx / w) % w),
              l = static_cast<int>(idx % w);
    pt.m = {i - k_max, j - k_max, l - k_max};
    const Eigen::MatrixXcd b = deflated_symbol(assemble_symbol(pt.m, params));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b, false);
    if (es.info() != Eigen::Success) {
      pt.ok = false;
      return;
    }
    for (Eigen::Index q = 0; q < es.eigenvalues().size(); ++q) {
      const cplx z = es.eigenvalues()(q);
      pt.eigenvalues.push_back(z);
      if (z.imag() > 1e-9 && (!pt.has_tracked || z.real() > pt.tracked.real())) {
        pt.tracked = z;
        pt.has_tracked = true;
      }
    }
    std::sort(pt.eigenvalues.begin(), pt.eigenvalues.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
  });

  out.max_re = -std::numeric_limits<double>::infinity();
  out.shells.resize(static_cast<std::size_t>(k_max));
  for (int s = 0; s < k_max; ++s) {
    out.shells[static_cast<std::size_t>(s)].shell = s + 1;
    out.shells[static_cast<std::size_t>(s)].tracked_re = -std::numeric_limits<double>::infinity();
  }
  for (const ScanPoint& pt : out.points) {
    if (!pt.ok) {
      out.failures.push_back(pt.m);
      continue;
    }
    for (const cplx& z : pt.eigenvalues) {
      if (z.real() > out.max_re) {
        out.max_re = z.real();
        out.argmax = pt.m;
      }
      out.im_bound = std::max(out.im_bound, std::abs(z.imag()));
    }
    const int shell = std::max({std::abs(pt.m[0]), std::abs(pt.m[1]), std::abs(pt.m[2])});
    if (shell == 0 || !pt.has_tracked) continue;
    ShellStat& st = out.shells[static_cast<std::size_t>(shell - 1)];
    if (pt.tracked.real() > st.tracked_re) {
      st.tracked_re = pt.tracked.real();
      st.at = pt.m;
    }
  }
  const SymbolMatrix s0 = assemble_symbol(std::array<double, 3>{0, 0, 0}, params);
  Eigen::EigenSolver<Eigen::Matrix3d> kb(s0.kbar_block, false);
  std::array<cplx, 3> ev{kb.eigenvalues()(0), kb.eigenvalues()(1), kb.eigenvalues()(2)};
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  out.kbar_eigenvalues = ev;
  return out;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::inconclusive: return "inconclusive";
  }
  return "";
}

StabilityVerdict classify_stability(const SymbolSpectrum& scan, const PhysParams& params, double tol) {
  if (params.nu == params.lambda) throw ConfigError("stability verdict needs nu != lambda");
  StabilityVerdict v;
  v.max_re = scan.max_re;
  v.witness = scan.argmax;
  const std::string at = "(" + std::to_string(v.witness[0]) + "," + std::to_string(v.witness[1]) + "," +
                         std::to_string(v.witness[2]) + ")";
  if (scan.max_re > tol) {
    v.verdict = Stability::unstable;
    v.text = "linearly unstable at k=2pi*" + at;
  } else if (scan.max_re < -tol) {
    v.verdict = Stability::stable;
    v.text = "linearly stable (no Re>0)";
  } else {
    v.verdict = Stability::inconclusive;
    v.text = "inconclusive: max Re within tolerance of 0 at k=2pi*" + at;
  }
  v.matches_inertia = (v.verdict == Stability::stable) == params.oblate() && v.verdict != Stability::inconclusive;
  return v;
}

StabilityVerdict classify_stability(const PhysParams& params, int k_max, double tol) {
  if (params.nu == params.lambda) throw ConfigError("stability verdict needs nu != lambda");
  return classify_stability(eigen_scan(params, k_max), params, tol);
}

void write_scan_csv(std::ostream& os, const SymbolSpectrum& s) {
  os << "mx,my,mz";
  for (int q = 0; q < 7; ++q) os << ",re" << q << ",im" << q;
  os << '\n' << std::setprecision(17);
  for (const ScanPoint& pt : s.points) {
    os << pt.m[0] << ',' << pt.m[1] << ',' << pt.m[2];
    for (std::size_t q = 0; q < 7; ++q) {
      if (q < pt.eigenvalues.size())
        os << ',' << pt.eigenvalues[q].real() << ',' << pt.eigenvalues[q].imag();
      else
        os << ",,";
    }
    os << '\n';
  }
}

void write_scan_json(std::ostream& os, const SymbolSpectrum& s, const StabilityVerdict& v) {
  nlohmann::json j;
  j["k_max"] = s.k_max;
  j["verdict"] = to_string(v.verdict);
  j["text"] = v.text;
  j["max_re"] = s.max_re;
  j["witness"] = v.witness;
  j["matches_inertia"] = v.matches_inertia;
  j["im_bound"] = s.im_bound;
  j["failures"] = s.failures;
  nlohmann::json kb = nlohmann::json::array();
  for (const cplx& z : s.kbar_eigenvalues) kb.push_back({z.real(), z.imag()});
  j["kbar_eigenvalues"] = kb;
  nlohmann::json sh = nlohmann::json::array();
  for (const ShellStat& st : s.shells) sh.push_back({{"shell", st.shell}, {"tracked_re", st.tracked_re}, {"at", st.at}});
  j["shells"] = sh;
  os << j.dump(2) << '\n';
}

}  // namespace micropolar
