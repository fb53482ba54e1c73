#pragma once

#include "vproof/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vproof {

/// Per-proof overrides of the default exploration config. Only set fields
/// apply.
struct ConfigDelta {
  std::optional<int> max_depth;
  std::optional<int64_t> max_paths;
  std::optional<ByteProfile> byte_profile;
  std::optional<uint64_t> seed;
  std::optional<bool> fail_fast;
  std::optional<bool> strict_depth;
  std::optional<bool> strict_uninit;

  ExploreConfig apply(ExploreConfig base) const;
  bool empty() const;
};

struct ProofEntry {
  std::string name;
  std::string description;
  ProofBody body;
  /// Applied on top of the runner defaults; explicit CLI flags win over these.
  ConfigDelta defaults;
};

/// In-process proof registry: the harness binary embeds its proofs.
/// Immutable once runs start.
class ProofRegistry {
public:
  void add(ProofEntry entry);
  const std::vector<ProofEntry>& entries() const { return entries_; }
  const ProofEntry* find(const std::string& name) const;

private:
  std::vector<ProofEntry> entries_;
};

/// Shell-style glob over proof names: `*` and `?`.
bool glob_match(std::string_view pattern, std::string_view text);

enum class ReportFormat { Text, Json };

struct RunOptions {
  std::string filter = "*";
  /// Flags the caller set explicitly; these override per-proof defaults.
  ConfigDelta cli;
  ReportFormat format = ReportFormat::Text;
  /// Worker threads; 0 picks the hardware concurrency. Reports are merged
  /// in name order either way.
  unsigned jobs = 0;
};

// Exit-status law: 0 all pass, 1 any fail, 2 inconclusive without failures,
// 3 usage error (also used for an empty filter match).
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;

struct RunResult {
  RunReport run;
  int exit_code = kExitPass;
  std::string error; // set when exit_code == kExitUsage
};

/// Explores every proof matching the filter, name order, optionally across
/// worker threads; per-proof exploration stays single-threaded and the
/// merged output is deterministic.
RunResult run_proofs(const ProofRegistry& registry, const RunOptions& options);

int exit_code_for(const std::vector<ProofReport>& reports);

} // namespace vproof
