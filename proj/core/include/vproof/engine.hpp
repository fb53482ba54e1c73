#pragma once

#include "vproof/context.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vproof {

/// Exploration parameters. max_depth bounds the number of choice points per
/// path; max_paths bounds how many paths are walked before the run is cut
/// off as inconclusive.
struct ExploreConfig {
  int max_depth = 64;
  int64_t max_paths = 100000;
  ByteProfile byte_profile{};
  uint64_t seed = 0;
  bool fail_fast = false;
  /// Treat depth-exhausted paths as failures instead of a separate bucket.
  bool strict_depth = false;
  /// Reading a byte nothing ever wrote is a violation.
  bool strict_uninit = true;

  void validate() const;
  bool operator==(const ExploreConfig&) const = default;
};

using ProofBody = std::function<void(ExecutionContext&)>;

struct PathCounts {
  int64_t complete = 0;
  int64_t pruned = 0;
  int64_t failed = 0;
  int64_t depth_exhausted = 0;

  int64_t total() const { return complete + pruned + failed + depth_exhausted; }
  bool operator==(const PathCounts&) const = default;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict verdict);
Verdict verdict_from_string(const std::string& text);

struct Violation {
  std::string kind;
  std::string message;
  std::vector<TraceEvent> trace;
  bool operator==(const Violation&) const = default;
};

struct ProofReport {
  std::string name;
  Verdict verdict = Verdict::Pass;
  PathCounts paths;
  std::vector<Violation> violations;
  double duration_ms = 0.0;
  ExploreConfig config;
  bool operator==(const ProofReport&) const = default;
};

/// Side facts about a run that are not part of the report schema.
struct ExploreStats {
  bool budget_exceeded = false;
  bool stopped_fail_fast = false;
  int64_t leaked_buffers = 0; // unfreed buffers summed over complete paths
};

struct ExploreOutcome {
  ProofReport report;
  ExploreStats stats;
};

/// Observation point at the end of every path; spans reference state owned
/// by the walk's context and are only valid during the callback.
struct PathView {
  PathStatus status;
  const std::vector<ChoiceRecord>& trail;
  const std::vector<TraceEvent>& trace;
  const ExecutionContext& ctx;
};

struct ExploreHooks {
  std::function<void(const PathView&)> on_path_end;
};

/// Enumerates every resolution of the proof's choices depth-first, domain
/// values in declaration order. Deterministic for a fixed config.
ExploreOutcome explore(std::string name, const ProofBody& body,
                       const ExploreConfig& config,
                       const ExploreHooks& hooks = {});

struct ReplayResult {
  PathStatus status = PathStatus::Active;
  std::vector<TraceEvent> trace;
  std::vector<TraceEvent> violations;
};

/// Re-executes the proof forcing the recorded choice values; used to
/// reproduce a counterexample from its trail.
ReplayResult replay_trail(std::string name, const ProofBody& body,
                          const ExploreConfig& config,
                          std::span<const int64_t> values);

} // namespace vproof
