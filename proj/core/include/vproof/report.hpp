#pragma once

#include "vproof/engine.hpp"

#include <string>
#include <vector>

namespace vproof {

/// Output of one runner invocation over a set of proofs, ordered by name.
struct RunReport {
  std::string tool_version;
  ExploreConfig config;
  std::vector<ProofReport> reports;
  bool operator==(const RunReport&) const = default;
};

/// One line per trace event: `#<ordinal> <kind> <details>`. Choice lines
/// carry the choice-point id and bound value, so a trace can be replayed by
/// hand.
std::string render_trace(const Violation& violation);

std::string render_text(const RunReport& run);

// Stable machine-readable schema: snake_case keys, trace events tagged by
// "kind" with kind-specific fields.
std::string render_json(const RunReport& run);
RunReport parse_json(const std::string& text);

/// Same report with every duration zeroed; the rest is deterministic for a
/// fixed config.
RunReport strip_durations(RunReport run);

} // namespace vproof
