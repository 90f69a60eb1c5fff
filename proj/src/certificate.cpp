#include "osc/certificate.hpp"

#include <sstream>

namespace osc {

nlohmann::json Certificate::to_json(bool include_timings) const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["scenario"] = scenario;
  j["params"] = params;
  j["budgets"] = budgets;
  j["seed"] = seed;
  j["verdict"] = verdict;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) {
    ws.push_back({{"claim", w.claim}, {"element", w.element}, {"factorization", w.factorization}});
  }
  j["witnesses"] = ws;
  j["notes"] = notes;
  j["timings_ms"] = include_timings ? nlohmann::json(timings_ms) : nlohmann::json::object();
  j["tool_version"] = tool_version;
  return j;
}

Certificate Certificate::from_json(const nlohmann::json& j) {
  Certificate c;
  c.schema_version = j.at("schema_version").get<std::string>();
  c.scenario = j.at("scenario").get<std::string>();
  c.params = j.at("params").get<std::map<std::string, std::string>>();
  c.budgets = j.at("budgets").get<std::map<std::string, std::string>>();
  c.seed = j.at("seed").get<long long>();
  c.verdict = j.at("verdict").get<std::string>();
  for (const auto& w : j.at("witnesses")) {
    CertWitness cw;
    cw.claim = w.at("claim").get<std::string>();
    cw.element = w.at("element").get<std::string>();
    cw.factorization = w.at("factorization").get<std::vector<std::string>>();
    c.witnesses.push_back(std::move(cw));
  }
  if (j.contains("notes")) c.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("timings_ms")) {
    c.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
  }
  c.tool_version = j.at("tool_version").get<std::string>();
  return c;
}

std::string Certificate::to_string(bool include_timings) const {
  return to_json(include_timings).dump(2) + "\n";
}

std::string Certificate::text_report() const {
  std::ostringstream out;
  out << "scenario: " << scenario << "\n";
  out << "verdict:  " << verdict << "\n";
  for (const auto& [k, v] : params) out << "param " << k << " = " << v << "\n";
  for (const auto& [k, v] : budgets) out << "budget " << k << " = " << v << "\n";
  out << "seed: " << seed << "\n";
  if (!witnesses.empty()) {
    out << "witnesses (" << witnesses.size() << "):\n";
    for (const auto& w : witnesses) {
      out << "  - " << w.claim << "\n";
      out << "    element: " << w.element << "\n";
      if (!w.factorization.empty()) {
        out << "    factors:";
        for (const auto& f : w.factorization) out << " [" << f << "]";
        out << "\n";
      }
    }
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  out << "tool: " << tool_version << "\n";
  return out.str();
}

bool Certificate::same_content(const Certificate& other) const {
  return to_json(false) == other.to_json(false);
}

}  // namespace osc
