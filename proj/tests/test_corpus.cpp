#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vproof/corpus.hpp"
#include "vproof/registry.hpp"

using namespace vproof;
using namespace vproof::corpus;

namespace {

ExploreConfig water_cfg() {
  ExploreConfig cfg;
  cfg.max_depth = 12;
  cfg.max_paths = 1000000;
  return cfg;
}

} // namespace

TEST_CASE("corpus registers eight proofs") {
  ProofRegistry registry;
  register_corpus(registry);
  CHECK(registry.entries().size() == 8);
  CHECK(registry.find("water") != nullptr);
  CHECK(registry.find("do_handle_msg_fake") != nullptr);
  CHECK(registry.find("do_handle_msg_summary") != nullptr);
  CHECK(registry.find("do_handle_msg_mock") != nullptr);
  CHECK(registry.find("do_handle_msg_mock_dsl") != nullptr);
  CHECK(registry.find("ssl_recv_fetch") != nullptr);
}

TEST_CASE("water: holds under the unrolling bound, some paths exhausted") {
  auto outcome = explore("water", make_water_proof(), water_cfg());
  CHECK(outcome.report.verdict == Verdict::Pass);
  CHECK(outcome.report.paths.failed == 0);
  CHECK(outcome.report.paths.complete > 0);
  CHECK(outcome.report.paths.depth_exhausted > 0); // zero-pour runs

  ExploreConfig strict = water_cfg();
  strict.strict_depth = true;
  auto promoted = explore("water", make_water_proof(), strict);
  CHECK(promoted.report.verdict == Verdict::Fail);
}

TEST_CASE("water: zero quantity never enters the loop") {
  WaterOptions options;
  options.qty = ChoiceDomain::of({0});
  auto outcome = explore("water", make_water_proof(options), water_cfg());
  CHECK(outcome.report.verdict == Verdict::Pass);
  CHECK(outcome.report.paths.depth_exhausted == 0);
  CHECK(outcome.report.paths.complete == 1);
}

TEST_CASE("environment triptych on the identical dispatch body") {
  ExploreConfig cfg;

  MsgProofOptions fake;
  fake.style = MsgEnvStyle::Fake;
  auto fake_outcome =
      explore("do_handle_msg_fake", make_msg_proof(fake), cfg);
  CHECK(fake_outcome.report.verdict == Verdict::Pass);

  MsgProofOptions summary;
  summary.style = MsgEnvStyle::Summary;
  auto summary_outcome =
      explore("do_handle_msg_summary", make_msg_proof(summary), cfg);
  CHECK(summary_outcome.report.verdict == Verdict::Fail);
  REQUIRE_FALSE(summary_outcome.report.violations.empty());
  // Counterexamples name both environment calls involved in the mismatch.
  for (const Violation& v : summary_outcome.report.violations) {
    bool saw_get = false, saw_read = false;
    for (const TraceEvent& event : v.trace) {
      if (auto* call = std::get_if<MockCallEvent>(&event)) {
        saw_get = saw_get || call->handle == "get_msg";
        saw_read = saw_read || call->handle == "read_msg";
      }
    }
    CHECK(saw_get);
    CHECK(saw_read);
  }

  MsgProofOptions mock;
  mock.style = MsgEnvStyle::MockDsl;
  auto mock_outcome =
      explore("do_handle_msg_mock_dsl", make_msg_proof(mock), cfg);
  CHECK(mock_outcome.report.verdict == Verdict::Pass);
}

TEST_CASE("summary environment passes once nothing observes the gap") {
  MsgProofOptions options;
  options.style = MsgEnvStyle::Summary;
  options.consistency_check = false;
  ExploreConfig cfg;
  cfg.strict_uninit = false;
  auto outcome = explore("weak", make_msg_proof(options), cfg);
  CHECK(outcome.report.verdict == Verdict::Pass);

  // Either observer alone still catches it.
  ExploreConfig strict_only;
  auto a = explore("strict_only", make_msg_proof(options), strict_only);
  CHECK(a.report.verdict == Verdict::Fail);

  MsgProofOptions consistency_only;
  consistency_only.style = MsgEnvStyle::Summary;
  ExploreConfig lax;
  lax.strict_uninit = false;
  auto b = explore("consistency_only", make_msg_proof(consistency_only), lax);
  CHECK(b.report.verdict == Verdict::Fail);
}

TEST_CASE("hand-rolled and DSL mock environments have identical statistics") {
  MsgProofOptions hand;
  hand.style = MsgEnvStyle::MockHand;
  MsgProofOptions dsl;
  dsl.style = MsgEnvStyle::MockDsl;
  ExploreConfig cfg;
  auto hand_outcome = explore("hand", make_msg_proof(hand), cfg);
  auto dsl_outcome = explore("dsl", make_msg_proof(dsl), cfg);
  CHECK(hand_outcome.report.verdict == Verdict::Pass);
  CHECK(dsl_outcome.report.verdict == Verdict::Pass);
  CHECK(hand_outcome.report.paths == dsl_outcome.report.paths);
}

TEST_CASE("fault injection: mutating the message trips the handler's check") {
  for (MsgEnvStyle style :
       {MsgEnvStyle::Fake, MsgEnvStyle::MockHand, MsgEnvStyle::MockDsl}) {
    MsgProofOptions options;
    options.style = style;
    options.fault_modify_msg = true;
    auto outcome = explore("mutate", make_msg_proof(options), {});
    CHECK(outcome.report.verdict == Verdict::Fail);
    REQUIRE_FALSE(outcome.report.violations.empty());
    bool saw_unmodified_assert = false;
    for (const Violation& v : outcome.report.violations)
      for (const TraceEvent& event : v.trace)
        if (auto* fail = std::get_if<AssertFailEvent>(&event))
          saw_unmodified_assert =
              saw_unmodified_assert || fail->message == "msg-unmodified";
    CHECK(saw_unmodified_assert);
  }
}

TEST_CASE("fault injection: reading before getting violates the order") {
  MsgProofOptions options;
  options.style = MsgEnvStyle::MockDsl;
  options.fault_read_before_get = true;
  auto outcome = explore("reorder", make_msg_proof(options), {});
  CHECK(outcome.report.verdict == Verdict::Fail);
  REQUIRE_FALSE(outcome.report.violations.empty());
  CHECK(outcome.report.violations[0].kind == "order_violation");
}

TEST_CASE("fault injection: dropping the retire call is accepted") {
  MsgProofOptions options;
  options.style = MsgEnvStyle::MockDsl;
  options.fault_drop_put = true;
  auto outcome = explore("drop_put", make_msg_proof(options), {});
  CHECK(outcome.report.verdict == Verdict::Pass); // put_msg is lazy: any count
}

TEST_CASE("zero channels leave every path pruned") {
  MsgProofOptions options;
  options.style = MsgEnvStyle::Fake;
  options.channels = 0;
  auto outcome = explore("no_channels", make_msg_proof(options), {});
  CHECK(outcome.report.paths.complete == 0);
  CHECK(outcome.report.paths.failed == 0);
  CHECK(outcome.report.paths.pruned > 0);
  CHECK(outcome.report.verdict == Verdict::Inconclusive);
}

TEST_CASE("corpus proofs never leak buffers on complete paths") {
  ProofRegistry registry;
  register_corpus(registry);
  for (const ProofEntry& entry : registry.entries()) {
    ExploreConfig cfg = entry.defaults.apply(ExploreConfig{});
    auto outcome = explore(entry.name, entry.body, cfg);
    INFO(entry.name);
    CHECK(outcome.stats.leaked_buffers == 0);
  }
}

TEST_CASE("ssl fetch: bounds-checked receive with a harness-set minimum") {
  auto outcome = explore("ssl", make_ssl_fetch_proof(), {});
  CHECK(outcome.report.verdict == Verdict::Pass);
  CHECK(outcome.report.paths.complete == 4); // -1, 0, 4, 8 (2 assumed away)
  CHECK(outcome.report.paths.pruned == 1);

  SslFetchOptions under;
  under.buf_size = 2; // smaller than the requested read
  auto failing = explore("ssl_under", make_ssl_fetch_proof(under), {});
  CHECK(failing.report.verdict == Verdict::Fail);
  REQUIRE_FALSE(failing.report.violations.empty());
  bool deref_assert = false;
  for (const TraceEvent& event : failing.report.violations[0].trace)
    if (auto* fail = std::get_if<AssertFailEvent>(&event))
      deref_assert = deref_assert || fail->message == "recv-buffer-deref";
  CHECK(deref_assert);

  SslFetchOptions errs;
  errs.recv_results = {-1};
  auto err_outcome = explore("ssl_err", make_ssl_fetch_proof(errs), {});
  CHECK(err_outcome.report.verdict == Verdict::Pass);
  CHECK(err_outcome.report.paths.complete == 1);
}

TEST_CASE("replaying any failed corpus path reproduces its violation") {
  ProofRegistry registry;
  register_corpus(registry);
  const ProofEntry* summary = registry.find("do_handle_msg_summary");
  REQUIRE(summary != nullptr);

  struct FailedPath {
    std::vector<int64_t> trail;
    std::vector<TraceEvent> violations;
  };
  std::vector<FailedPath> failed;
  ExploreHooks hooks;
  hooks.on_path_end = [&](const PathView& view) {
    if (view.status != PathStatus::Failed)
      return;
    FailedPath fp;
    for (const auto& rec : view.trail)
      fp.trail.push_back(rec.value);
    for (const TraceEvent& event : view.trace)
      if (is_violation_event(event))
        fp.violations.push_back(event);
    failed.push_back(std::move(fp));
  };
  ExploreConfig cfg;
  auto outcome = explore(summary->name, summary->body, cfg, hooks);
  REQUIRE(outcome.report.paths.failed ==
          static_cast<int64_t>(failed.size()));
  REQUIRE_FALSE(failed.empty());
  for (const FailedPath& fp : failed) {
    ReplayResult replayed =
        replay_trail(summary->name, summary->body, cfg, fp.trail);
    CHECK(replayed.status == PathStatus::Failed);
    CHECK(replayed.violations == fp.violations);
  }
}
