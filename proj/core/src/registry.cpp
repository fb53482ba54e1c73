#include "vproof/registry.hpp"

#include "vproof/version.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace vproof {

ExploreConfig ConfigDelta::apply(ExploreConfig base) const {
  if (max_depth)
    base.max_depth = *max_depth;
  if (max_paths)
    base.max_paths = *max_paths;
  if (byte_profile)
    base.byte_profile = *byte_profile;
  if (seed)
    base.seed = *seed;
  if (fail_fast)
    base.fail_fast = *fail_fast;
  if (strict_depth)
    base.strict_depth = *strict_depth;
  if (strict_uninit)
    base.strict_uninit = *strict_uninit;
  return base;
}

bool ConfigDelta::empty() const {
  return !max_depth && !max_paths && !byte_profile && !seed && !fail_fast &&
         !strict_depth && !strict_uninit;
}

void ProofRegistry::add(ProofEntry entry) {
  if (find(entry.name) != nullptr)
    throw ConfigError("proof already registered: " + entry.name);
  entries_.push_back(std::move(entry));
}

const ProofEntry* ProofRegistry::find(const std::string& name) const {
  for (const ProofEntry& entry : entries_)
    if (entry.name == name)
      return &entry;
  return nullptr;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  size_t p = 0, t = 0;
  size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*')
    ++p;
  return p == pattern.size();
}

int exit_code_for(const std::vector<ProofReport>& reports) {
  bool any_fail = false, any_inconclusive = false;
  for (const ProofReport& report : reports) {
    any_fail = any_fail || report.verdict == Verdict::Fail;
    any_inconclusive =
        any_inconclusive || report.verdict == Verdict::Inconclusive;
  }
  if (any_fail)
    return kExitFail;
  if (any_inconclusive)
    return kExitInconclusive;
  return kExitPass;
}

RunResult run_proofs(const ProofRegistry& registry, const RunOptions& options) {
  RunResult result;
  result.run.tool_version = kToolVersion;
  result.run.config = options.cli.apply(ExploreConfig{});

  std::vector<const ProofEntry*> selected;
  for (const ProofEntry& entry : registry.entries())
    if (glob_match(options.filter, entry.name))
      selected.push_back(&entry);
  std::sort(selected.begin(), selected.end(),
            [](const ProofEntry* a, const ProofEntry* b) {
              return a->name < b->name;
            });

  if (selected.empty()) {
    result.exit_code = kExitUsage;
    result.error = "no proof matches filter '" + options.filter + "'";
    return result;
  }

  result.run.reports.resize(selected.size());
  unsigned jobs = options.jobs == 0 ? std::thread::hardware_concurrency()
                                    : options.jobs;
  jobs = std::max(1u, std::min<unsigned>(jobs, selected.size()));

  auto work = [&](size_t index) {
    const ProofEntry& entry = *selected[index];
    // Defaults, then the proof's own deltas, then explicit CLI flags.
    ExploreConfig config =
        options.cli.apply(entry.defaults.apply(ExploreConfig{}));
    result.run.reports[index] =
        explore(entry.name, entry.body, config).report;
  };

  if (jobs == 1) {
    for (size_t i = 0; i < selected.size(); ++i)
      work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < selected.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (std::thread& worker : workers)
      worker.join();
  }

  result.exit_code = exit_code_for(result.run.reports);
  return result;
}

} // namespace vproof
