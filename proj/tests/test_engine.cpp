#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vproof/engine.hpp"

#include "support/oracles.hpp"

#include <algorithm>
#include <set>

using namespace vproof;

namespace {

ExploreConfig small_cfg() {
  ExploreConfig cfg;
  cfg.max_depth = 16;
  cfg.max_paths = 100000;
  return cfg;
}

} // namespace

TEST_CASE("choice domain validation") {
  CHECK_THROWS_AS(ChoiceDomain::of(std::vector<int64_t>{}), ConfigError);
  CHECK_THROWS_AS(ChoiceDomain::of({1, 2, 1}), ConfigError);
  CHECK_THROWS_AS(ChoiceDomain::range(5, 4), ConfigError);
  // Unbounded-looking ranges are configuration errors: every choice must
  // name a domain small enough to enumerate.
  CHECK_THROWS_AS(ChoiceDomain::range(0, 4294967295LL), ConfigError);
  CHECK_THROWS_AS(ChoiceDomain::range(0, 65536), ConfigError);
  CHECK(ChoiceDomain::range(0, 65535).size() == 65536);

  ChoiceDomain d = ChoiceDomain::of({7, -2, 0});
  CHECK(d.size() == 3);
  CHECK(d.at(0) == 7); // declaration order
  CHECK(d.at(1) == -2);
  CHECK(d.contains(0));
  CHECK_FALSE(d.contains(1));

  ChoiceDomain r = ChoiceDomain::range(-1, 2);
  CHECK(r.size() == 4);
  CHECK(r.at(0) == -1);
  CHECK(r.at(3) == 2);
}

TEST_CASE("byte profiles") {
  CHECK(resolve_byte_profile(ByteProfile::small(), 0) ==
        std::vector<int64_t>{0, 1, 255});
  auto full = resolve_byte_profile(ByteProfile::full(), 0);
  CHECK(full.size() == 256);
  CHECK(full.front() == 0);
  CHECK(full.back() == 255);

  auto s1 = resolve_byte_profile(ByteProfile::sample(16), 42);
  auto s2 = resolve_byte_profile(ByteProfile::sample(16), 42);
  auto s3 = resolve_byte_profile(ByteProfile::sample(16), 43);
  CHECK(s1 == s2); // deterministic under a fixed seed
  CHECK(s1 != s3);
  CHECK(s1.size() == 16);
  CHECK(std::set<int64_t>(s1.begin(), s1.end()).size() == 16); // distinct
  for (int64_t v : s1)
    CHECK((v >= 0 && v <= 255));

  CHECK(ByteProfile::parse("small") == ByteProfile::small());
  CHECK(ByteProfile::parse("full") == ByteProfile::full());
  CHECK(ByteProfile::parse("sample:9") == ByteProfile::sample(9));
  CHECK_THROWS_AS(ByteProfile::parse("weird"), ConfigError);
  CHECK_THROWS_AS(ByteProfile::parse("sample:0"), ConfigError);
  CHECK(ByteProfile::sample(9).to_string() == "sample:9");
}

TEST_CASE("enumeration cardinality equals domain size") {
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::of({0, 1, 2}));
      },
      small_cfg());
  CHECK(outcome.report.paths.complete == 3);
  CHECK(outcome.report.verdict == Verdict::Pass);
}

TEST_CASE("integer range enumerates every value") {
  std::set<int64_t> seen;
  ExploreHooks hooks;
  hooks.on_path_end = [&](const PathView& view) {
    seen.insert(view.trail.front().value);
  };
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::range(0, 10));
      },
      small_cfg(), hooks);
  CHECK(outcome.report.paths.complete == 11);
  CHECK(seen.size() == 11);
}

TEST_CASE("independent choices multiply") {
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::of({0, 1}));
        (void)nd_value(ctx, ChoiceDomain::of({0, 1, 2}));
      },
      small_cfg());
  CHECK(outcome.report.paths.complete == 6);
}

TEST_CASE("assume prunes and prunes carry no verdict") {
  SUBCASE("assume(false) excludes the path") {
    auto outcome = explore(
        "t", [](ExecutionContext& ctx) { assume(ctx, false); }, small_cfg());
    CHECK(outcome.report.paths.pruned == 1);
    CHECK(outcome.report.paths.complete == 0);
    CHECK(outcome.report.violations.empty());
    CHECK(outcome.report.verdict == Verdict::Inconclusive); // vacuous
  }
  SUBCASE("filtered enumeration") {
    auto outcome = explore(
        "t",
        [](ExecutionContext& ctx) {
          int64_t v = nd_value(ctx, ChoiceDomain::range(0, 5));
          assume(ctx, v < 3);
        },
        small_cfg());
    CHECK(outcome.report.paths.complete == 3);
    CHECK(outcome.report.paths.pruned == 3);
  }
  SUBCASE("product with filter on the first choice") {
    auto outcome = explore(
        "t",
        [](ExecutionContext& ctx) {
          int64_t a = nd_value(ctx, ChoiceDomain::of({0, 1}));
          assume(ctx, a == 0);
          (void)nd_value(ctx, ChoiceDomain::of({0, 1, 2}));
        },
        small_cfg());
    CHECK(outcome.report.paths.complete == 3);
  }
}

TEST_CASE("sassert semantics") {
  SUBCASE("true is a no-op") {
    auto outcome = explore(
        "t", [](ExecutionContext& ctx) { sassert(ctx, true, "fine"); },
        small_cfg());
    CHECK(outcome.report.paths.complete == 1);
    CHECK(outcome.report.verdict == Verdict::Pass);
  }
  SUBCASE("false fails the path and the trace ends with the failure") {
    auto outcome = explore(
        "t", [](ExecutionContext& ctx) { sassert(ctx, false, "post"); },
        small_cfg());
    CHECK(outcome.report.paths.failed == 1);
    CHECK(outcome.report.paths.total() == 1);
    CHECK(outcome.report.verdict == Verdict::Fail);
    REQUIRE(outcome.report.violations.size() == 1);
    const auto& trace = outcome.report.violations[0].trace;
    REQUIRE_FALSE(trace.empty());
    auto* fail = std::get_if<AssertFailEvent>(&trace.back());
    REQUIRE(fail != nullptr);
    CHECK(fail->message == "post");
    CHECK(fail->site == "t:post"); // default site is proof:message
  }
}

TEST_CASE("depth exhaustion is not a failure unless strict") {
  auto body = [](ExecutionContext& ctx) {
    // 0 loops forever under unrolling; 1 terminates immediately.
    while (nd_value(ctx, ChoiceDomain::of({0, 1})) == 0) {
    }
  };
  ExploreConfig cfg = small_cfg();
  cfg.max_depth = 4;

  auto outcome = explore("t", body, cfg);
  CHECK(outcome.report.paths.depth_exhausted == 1); // all-zero path
  CHECK(outcome.report.paths.complete == 4);
  CHECK(outcome.report.verdict == Verdict::Pass);

  cfg.strict_depth = true;
  auto strict = explore("t", body, cfg);
  CHECK(strict.report.verdict == Verdict::Fail);
  CHECK(strict.report.paths.depth_exhausted == 1);
}

TEST_CASE("trail length never exceeds max depth") {
  ExploreConfig cfg = small_cfg();
  cfg.max_depth = 5;
  ExploreHooks hooks;
  hooks.on_path_end = [&](const PathView& view) {
    CHECK(view.trail.size() <= 5);
  };
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        for (;;)
          (void)nd_value(ctx, ChoiceDomain::of({0, 1}));
      },
      cfg, hooks);
  CHECK(outcome.report.paths.complete == 0);
  CHECK(outcome.report.paths.depth_exhausted == 32); // full binary frontier
}

TEST_CASE("path budget exhaustion is inconclusive") {
  ExploreConfig cfg = small_cfg();
  cfg.max_paths = 3;
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::range(0, 9));
      },
      cfg);
  CHECK(outcome.stats.budget_exceeded);
  CHECK(outcome.report.verdict == Verdict::Inconclusive);
  CHECK(outcome.report.paths.complete == 3);

  // Exactly consumed budget is not an overrun.
  cfg.max_paths = 10;
  auto exact = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::range(0, 9));
      },
      cfg);
  CHECK_FALSE(exact.stats.budget_exceeded);
  CHECK(exact.report.verdict == Verdict::Pass);
}

TEST_CASE("fail fast stops after the first failing path") {
  ExploreConfig cfg = small_cfg();
  cfg.fail_fast = true;
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        int64_t v = nd_value(ctx, ChoiceDomain::range(0, 9));
        sassert(ctx, v != 2, "no-two");
      },
      cfg);
  CHECK(outcome.stats.stopped_fail_fast);
  CHECK(outcome.report.verdict == Verdict::Fail);
  CHECK(outcome.report.paths.failed == 1);
  CHECK(outcome.report.paths.total() == 3); // 0, 1, then the failing 2
}

TEST_CASE("exploration order is depth-first in declaration order") {
  std::vector<std::vector<int64_t>> trails;
  ExploreHooks hooks;
  hooks.on_path_end = [&](const PathView& view) {
    std::vector<int64_t> t;
    for (const auto& rec : view.trail)
      t.push_back(rec.value);
    trails.push_back(t);
  };
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        (void)nd_value(ctx, ChoiceDomain::of({5, 7}));
        (void)nd_value(ctx, ChoiceDomain::of({1, 2}));
      },
      small_cfg(), hooks);
  REQUIRE(outcome.report.paths.complete == 4);
  CHECK(trails == std::vector<std::vector<int64_t>>{
                      {5, 1}, {5, 2}, {7, 1}, {7, 2}});
}

TEST_CASE("path isolation: cells, counters and memory never leak across") {
  // Write a cell after a choice and assert the pre-write value first; if any
  // sibling's write leaked, the assertion would trip there.
  auto outcome = explore(
      "t",
      [](ExecutionContext& ctx) {
        int cell = ctx.make_cell("c", 5);
        int64_t v = nd_value(ctx, ChoiceDomain::of({0, 1, 2}));
        sassert(ctx, ctx.cell_read(cell) == 5, "pre-write value");
        ctx.cell_write(cell, v + 7);
        sassert(ctx, ctx.cell_read(cell) == v + 7, "own write visible");

        BufferRef buf = alloc(ctx, 4);
        sassert(ctx, !ctx.is_init_region(buf, 0, 1), "fresh buffer");
        ctx.mem_write_byte(buf, 0, static_cast<uint8_t>(v));
        sassert(ctx, ctx.mem_read_byte(buf, 0) == static_cast<uint8_t>(v),
                "own byte visible");
        free(ctx, buf);
      },
      small_cfg());
  CHECK(outcome.report.paths.complete == 3);
  CHECK(outcome.report.verdict == Verdict::Pass);
}

TEST_CASE("determinism: identical config gives identical outcomes") {
  auto make = [] {
    return explore(
        "t",
        [](ExecutionContext& ctx) {
          int64_t v = nd_value(ctx, ChoiceDomain::bytes(ByteProfile::sample(5)));
          sassert(ctx, v != 17, "not-seventeen");
        },
        small_cfg());
  };
  auto a = make();
  auto b = make();
  a.report.duration_ms = b.report.duration_ms = 0;
  CHECK(a.report == b.report);
}

TEST_CASE("trace replay reproduces the identical violation") {
  auto body = [](ExecutionContext& ctx) {
    int64_t a = nd_value(ctx, ChoiceDomain::of({0, 1, 2}), "a");
    int64_t b = nd_value(ctx, ChoiceDomain::of({0, 1}), "b");
    sassert(ctx, a + b != 3, "sum-three");
  };
  std::vector<std::vector<int64_t>> failed_trails;
  std::vector<std::vector<TraceEvent>> failed_traces;
  ExploreHooks hooks;
  hooks.on_path_end = [&](const PathView& view) {
    if (view.status == PathStatus::Failed) {
      std::vector<int64_t> t;
      for (const auto& rec : view.trail)
        t.push_back(rec.value);
      failed_trails.push_back(t);
      failed_traces.push_back(view.trace);
    }
  };
  auto outcome = explore("t", body, small_cfg(), hooks);
  REQUIRE(outcome.report.paths.failed == 1); // only (a=2, b=1) sums to 3
  REQUIRE(failed_trails.size() == 1);
  for (size_t i = 0; i < failed_trails.size(); ++i) {
    ReplayResult replayed =
        replay_trail("t", body, small_cfg(), failed_trails[i]);
    CHECK(replayed.status == PathStatus::Failed);
    CHECK(replayed.trace == failed_traces[i]);
    REQUIRE(replayed.violations.size() == 1);
  }
  CHECK_THROWS_AS(
      replay_trail("t", body, small_cfg(), std::vector<int64_t>{9, 9}),
      ConfigError); // value outside the domain
}

TEST_CASE("engine matches the brute-force oracle on synthetic proofs") {
  std::mt19937_64 eng(0xa11ce);
  for (int round = 0; round < 40; ++round) {
    auto proof = vproof::testing::gen_synthetic(eng);
    auto oracle = vproof::testing::oracle_enumerate(proof);

    std::vector<std::vector<int64_t>> passing, failing;
    ExploreHooks hooks;
    hooks.on_path_end = [&](const PathView& view) {
      std::vector<int64_t> t;
      for (const auto& rec : view.trail)
        t.push_back(rec.value);
      if (view.status == PathStatus::Complete)
        passing.push_back(t);
      else if (view.status == PathStatus::Failed)
        failing.push_back(t);
    };
    auto outcome =
        explore("synthetic", vproof::testing::body_of(proof), small_cfg(),
                hooks);

    std::sort(passing.begin(), passing.end());
    std::sort(failing.begin(), failing.end());
    std::sort(oracle.passing.begin(), oracle.passing.end());
    std::sort(oracle.failing.begin(), oracle.failing.end());
    REQUIRE(passing == oracle.passing);
    REQUIRE(failing == oracle.failing);
    REQUIRE(outcome.report.paths.complete ==
            static_cast<int64_t>(oracle.passing.size()));
    REQUIRE(outcome.report.paths.failed ==
            static_cast<int64_t>(oracle.failing.size()));
  }
}

TEST_CASE("nondeterministic bodies are rejected") {
  int flip = 0;
  auto body = [&flip](ExecutionContext& ctx) {
    // Domain size depends on state outside the context: illegal.
    if (flip++ == 0)
      (void)nd_value(ctx, ChoiceDomain::of({0, 1}));
    else
      (void)nd_value(ctx, ChoiceDomain::of({0, 1, 2}));
    (void)nd_value(ctx, ChoiceDomain::of({0, 1}));
  };
  CHECK_THROWS_AS(explore("t", body, small_cfg()), ConfigError);
}

TEST_CASE("config validation") {
  ExploreConfig cfg;
  cfg.max_depth = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.max_depth = 1;
  cfg.max_paths = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
