#include "vproof/engine.hpp"

#include <chrono>

namespace vproof {

void ExploreConfig::validate() const {
  if (max_depth < 1)
    throw ConfigError("max_depth must be >= 1");
  if (max_paths < 1)
    throw ConfigError("max_paths must be >= 1");
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
  case Verdict::Pass:
    return "pass";
  case Verdict::Fail:
    return "fail";
  case Verdict::Inconclusive:
    return "inconclusive";
  }
  return "pass";
}

Verdict verdict_from_string(const std::string& text) {
  if (text == "pass")
    return Verdict::Pass;
  if (text == "fail")
    return Verdict::Fail;
  if (text == "inconclusive")
    return Verdict::Inconclusive;
  throw ConfigError("unknown verdict: " + text);
}

namespace {

/// Depth-first enumeration driver. Holds the frame stack across path
/// re-executions: the prefix below pos_ replays the current path, anything
/// pushed beyond it opens new choice points.
class DfsDriver final : public ChoiceSource {
public:
  uint32_t next(const ChoiceDomain& resolved) override {
    uint32_t size = resolved.size();
    if (pos_ < frames_.size()) {
      Frame& frame = frames_[pos_];
      if (frame.size != size)
        throw ConfigError("proof body is not deterministic: choice point " +
                          std::to_string(pos_) + " changed domain size");
      ++pos_;
      return frame.index;
    }
    frames_.push_back({0, size});
    ++pos_;
    return 0;
  }

  void begin_path() { pos_ = 0; }

  /// Advances to the next unexplored branch. Returns false once the whole
  /// tree has been walked.
  bool backtrack() {
    frames_.resize(pos_); // drop frames that belong to abandoned subtrees
    while (!frames_.empty() && frames_.back().index + 1 == frames_.back().size)
      frames_.pop_back();
    if (frames_.empty())
      return false;
    frames_.back().index++;
    return true;
  }

private:
  struct Frame {
    uint32_t index;
    uint32_t size;
  };
  std::vector<Frame> frames_;
  size_t pos_ = 0;
};

/// Forces the recorded values of a trail, position by position.
class ReplayDriver final : public ChoiceSource {
public:
  explicit ReplayDriver(std::span<const int64_t> values) : values_(values) {}

  uint32_t next(const ChoiceDomain& resolved) override {
    if (pos_ >= values_.size())
      throw ConfigError("replay trail shorter than the proof's choices");
    int64_t wanted = values_[pos_++];
    for (uint32_t i = 0; i < resolved.size(); ++i)
      if (resolved.at(i) == wanted)
        return i;
    throw ConfigError("replay value " + std::to_string(wanted) +
                      " not present in the choice domain");
  }

private:
  std::span<const int64_t> values_;
  size_t pos_ = 0;
};

void run_body(const ProofBody& body, ExecutionContext& ctx) {
  try {
    body(ctx);
  } catch (const PathEnd&) {
    // Path ended early; its status says how.
  }
  ctx.finalize_path();
}

void collect_violations(const ExecutionContext& ctx,
                        std::vector<Violation>& out) {
  for (const TraceEvent& event : ctx.trace()) {
    if (!is_violation_event(event))
      continue;
    out.push_back({event_kind(event), render_event(event),
                   std::vector<TraceEvent>(ctx.trace().begin(),
                                           ctx.trace().end())});
    return; // one counterexample per failed path; its trace holds the rest
  }
}

} // namespace

ExploreOutcome explore(std::string name, const ProofBody& body,
                       const ExploreConfig& config, const ExploreHooks& hooks) {
  config.validate();
  auto started = std::chrono::steady_clock::now();

  ChoiceDomain byte_domain = ChoiceDomain::of(
      resolve_byte_profile(config.byte_profile, config.seed));

  ExploreOutcome outcome;
  outcome.report.name = name;
  outcome.report.config = config;

  DfsDriver driver;
  int64_t paths = 0;
  bool more = true;
  while (more) {
    driver.begin_path();
    ExecutionContext ctx(name, config.max_depth, config.strict_uninit,
                         byte_domain, config.seed, &driver);
    run_body(body, ctx);

    PathCounts& counts = outcome.report.paths;
    switch (ctx.status()) {
    case PathStatus::Complete:
      counts.complete++;
      outcome.stats.leaked_buffers += ctx.live_buffer_count();
      break;
    case PathStatus::Pruned:
      counts.pruned++;
      break;
    case PathStatus::Failed:
      counts.failed++;
      collect_violations(ctx, outcome.report.violations);
      break;
    case PathStatus::DepthExhausted:
      counts.depth_exhausted++;
      break;
    case PathStatus::Active:
      break; // unreachable: finalize_path always resolves Active
    }
    ++paths;

    if (hooks.on_path_end)
      hooks.on_path_end(PathView{ctx.status(), ctx.trail(), ctx.trace(), ctx});

    if (config.fail_fast && ctx.status() == PathStatus::Failed) {
      outcome.stats.stopped_fail_fast = true;
      break;
    }
    more = driver.backtrack();
    if (more && paths >= config.max_paths) {
      outcome.stats.budget_exceeded = true;
      break;
    }
  }

  const PathCounts& counts = outcome.report.paths;
  bool failed = counts.failed > 0 ||
                (config.strict_depth && counts.depth_exhausted > 0);
  if (failed)
    outcome.report.verdict = Verdict::Fail;
  else if (outcome.stats.budget_exceeded || counts.complete == 0)
    outcome.report.verdict = Verdict::Inconclusive;
  else
    outcome.report.verdict = Verdict::Pass;

  auto ended = std::chrono::steady_clock::now();
  outcome.report.duration_ms =
      std::chrono::duration<double, std::milli>(ended - started).count();
  return outcome;
}

ReplayResult replay_trail(std::string name, const ProofBody& body,
                          const ExploreConfig& config,
                          std::span<const int64_t> values) {
  config.validate();
  ChoiceDomain byte_domain = ChoiceDomain::of(
      resolve_byte_profile(config.byte_profile, config.seed));
  ReplayDriver driver(values);
  ExecutionContext ctx(std::move(name), config.max_depth, config.strict_uninit,
                       byte_domain, config.seed, &driver);
  run_body(body, ctx);

  ReplayResult result;
  result.status = ctx.status();
  result.trace = ctx.trace();
  for (const TraceEvent& event : ctx.trace())
    if (is_violation_event(event))
      result.violations.push_back(event);
  return result;
}

} // namespace vproof
