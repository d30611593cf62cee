#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"
#include "modcoh/errors.hpp"

namespace modcoh {

enum class VerdictStatus {
  Pass,
  Fail,
  StrictInclusionWitnessed,  // a counterexample checker found its witness
};

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass:
      return "pass";
    case VerdictStatus::Fail:
      return "fail";
    case VerdictStatus::StrictInclusionWitnessed:
      return "strict-inclusion-witnessed";
  }
  return "?";
}

/// Outcome of one checker run. Deterministic given (id, params); the wall
/// time is carried for human-readable output but excluded from the
/// structured form so identical runs serialize to identical bytes.
struct TheoremVerdict {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json box;  // null when no truncation was involved
  VerdictStatus status = VerdictStatus::Pass;
  std::optional<std::string> witness;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double millis = 0.0;

  static TheoremVerdict pass(std::string id) {
    TheoremVerdict v;
    v.id = std::move(id);
    return v;
  }

  // Failures always carry a witness.
  void record_failure(const std::string& witness_text) {
    status = VerdictStatus::Fail;
    if (witness_text.empty())
      throw defect_error("fail verdict without witness in checker " + id);
    if (!witness) witness = witness_text;  // keep the first one found
  }

  void record_witnessed(const std::string& witness_text) {
    status = VerdictStatus::StrictInclusionWitnessed;
    if (!witness) witness = witness_text;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["theorem"] = id;
    j["params"] = params;
    j["box"] = box;
    j["status"] = to_string(status);
    j["witness"] = witness ? nlohmann::ordered_json(*witness)
                           : nlohmann::ordered_json(nullptr);
    j["details"] = details;
    return j;
  }

  std::string to_text() const {
    std::string line = "[" + std::string(to_string(status)) + "] " + id;
    if (!params.empty()) line += " " + params.dump();
    if (witness) line += "  witness: " + *witness;
    char buf[32];
    std::snprintf(buf, sizeof buf, "  (%.1f ms)", millis);
    line += buf;
    return line;
  }
};

}  // namespace modcoh
