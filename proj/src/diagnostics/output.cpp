#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "micropolar/diagnostics.hpp"

namespace micropolar {

void write_reports_csv(std::ostream& os, const std::vector<EnergyReport>& reports) {
  if (reports.empty()) return;
  const auto head = report_columns(reports.front());
  for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << head[i].first;
  os << '\n' << std::setprecision(17);
  for (const EnergyReport& r : reports) {
    const auto cols = report_columns(r);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].second;
    os << '\n';
  }
}

void write_reports_json(std::ostream& os, const std::vector<EnergyReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const EnergyReport& r : reports) {
    nlohmann::json j;
    for (const auto& [k, v] : report_columns(r)) j[k] = v;
    j["truncated"] = r.truncated;
    j["M"] = r.M;
    j["levels_used"] = r.levels_used;
    nlohmann::json inter = nlohmann::json::object();
    for (const Interaction& it : r.interactions) inter[it.alpha.label()] = it.terms;
    j["interactions"] = inter;
    arr.push_back(j);
  }
  os << arr.dump(2) << '\n';
}

}  // namespace micropolar
