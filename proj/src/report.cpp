#include "carnot/report.hpp"

#include <json.hpp>

namespace carnot {

std::string emit_report(const CheckReport& report, OutputFormat format,
                        const ReportMeta& meta) {
  if (format == OutputFormat::text) {
    std::string out;
    for (const auto& e : report.entries) {
      out += e.pass ? "PASS " : "FAIL ";
      out += e.name;
      if (e.witness) out += ": " + *e.witness;
      out += "\n";
    }
    return out;
  }
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json c;
    c["name"] = e.name;
    c["pass"] = e.pass;
    c["witness"] = e.witness ? nlohmann::json(*e.witness) : nlohmann::json(nullptr);
    j["checks"].push_back(c);
  }
  if (meta.has_meta) {
    j["tool_version"] = meta.tool_version;
    j["group"] = meta.group;
    j["command"] = meta.command;
    j["seed"] = meta.seed;
  }
  return j.dump(2) + "\n";
}

}  // namespace carnot
