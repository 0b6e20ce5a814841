#pragma once

#include <optional>
#include <string>
#include <vector>

namespace carnot {

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::optional<std::string> witness;  // required on failure
};

// Ordered list of named verification outcomes.
struct CheckReport {
  std::vector<CheckEntry> entries;

  void add(std::string name, bool pass, std::optional<std::string> witness = {}) {
    entries.push_back({std::move(name), pass, std::move(witness)});
  }
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

enum class OutputFormat { text, json };

struct ReportMeta {
  std::string tool_version;
  std::string group;
  std::string command;
  long seed = 0;
  bool has_meta = false;
};

// Stable serialization: JSON keys sorted, no floating point, identical bytes
// for identical inputs. Text mode is line-oriented PASS/FAIL.
std::string emit_report(const CheckReport& report, OutputFormat format,
                        const ReportMeta& meta = {});

}  // namespace carnot
