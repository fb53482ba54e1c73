#include "vproof/report.hpp"

#include "vproof/version.hpp"

#include <json.hpp>

#include <sstream>

namespace vproof {

using nlohmann::json;

std::string render_trace(const Violation& violation) {
  std::string out;
  for (size_t i = 0; i < violation.trace.size(); ++i) {
    out += "#" + std::to_string(i) + " " + render_event(violation.trace[i]);
    out += "\n";
  }
  return out;
}

namespace {

json config_to_json(const ExploreConfig& config) {
  return json{{"max_depth", config.max_depth},
              {"max_paths", config.max_paths},
              {"byte_profile", config.byte_profile.to_string()},
              {"seed", config.seed},
              {"fail_fast", config.fail_fast},
              {"strict_depth", config.strict_depth},
              {"strict_uninit", config.strict_uninit}};
}

ExploreConfig config_from_json(const json& j) {
  ExploreConfig config;
  config.max_depth = j.at("max_depth").get<int>();
  config.max_paths = j.at("max_paths").get<int64_t>();
  config.byte_profile = ByteProfile::parse(j.at("byte_profile").get<std::string>());
  config.seed = j.at("seed").get<uint64_t>();
  config.fail_fast = j.at("fail_fast").get<bool>();
  config.strict_depth = j.at("strict_depth").get<bool>();
  config.strict_uninit = j.at("strict_uninit").get<bool>();
  return config;
}

json event_to_json(const TraceEvent& event) {
  struct Visitor {
    json operator()(const ChoiceEvent& e) const {
      return json{{"kind", "choice"},
                  {"id", e.id},
                  {"label", e.label},
                  {"value", e.value}};
    }
    json operator()(const MockCallEvent& e) const {
      return json{{"kind", "mock_call"}, {"handle", e.handle}, {"args", e.args}};
    }
    json operator()(const AssumeEvent& e) const {
      return json{{"kind", "assume"}, {"result", e.result}};
    }
    json operator()(const AssertFailEvent& e) const {
      return json{
          {"kind", "assert_fail"}, {"message", e.message}, {"site", e.site}};
    }
    json operator()(const MemViolationEvent& e) const {
      return json{{"kind", "mem_violation"},
                  {"violation", to_string(e.violation)},
                  {"buffer", e.buffer},
                  {"offset", e.offset},
                  {"len", e.len},
                  {"size", e.size}};
    }
    json operator()(const OrderViolationEvent& e) const {
      return json{{"kind", "order_violation"},
                  {"handle", e.handle},
                  {"missing_predecessor", e.missing_predecessor}};
    }
    json operator()(const CardinalityViolationEvent& e) const {
      return json{{"kind", "cardinality_violation"},
                  {"handle", e.handle},
                  {"predicate", e.predicate},
                  {"actual", e.actual}};
    }
  };
  return std::visit(Visitor{}, event);
}

TraceEvent event_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "choice")
    return ChoiceEvent{j.at("id").get<int32_t>(),
                       j.at("label").get<std::string>(),
                       j.at("value").get<int64_t>()};
  if (kind == "mock_call")
    return MockCallEvent{j.at("handle").get<std::string>(),
                         j.at("args").get<std::string>()};
  if (kind == "assume")
    return AssumeEvent{j.at("result").get<bool>()};
  if (kind == "assert_fail")
    return AssertFailEvent{j.at("message").get<std::string>(),
                           j.at("site").get<std::string>()};
  if (kind == "mem_violation")
    return MemViolationEvent{
        mem_violation_kind_from_string(j.at("violation").get<std::string>()),
        j.at("buffer").get<uint32_t>(), j.at("offset").get<uint64_t>(),
        j.at("len").get<uint64_t>(), j.at("size").get<uint64_t>()};
  if (kind == "order_violation")
    return OrderViolationEvent{j.at("handle").get<std::string>(),
                               j.at("missing_predecessor").get<std::string>()};
  if (kind == "cardinality_violation")
    return CardinalityViolationEvent{j.at("handle").get<std::string>(),
                                     j.at("predicate").get<std::string>(),
                                     j.at("actual").get<uint64_t>()};
  throw ConfigError("unknown trace event kind: " + kind);
}

json proof_to_json(const ProofReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    json trace = json::array();
    for (const TraceEvent& event : v.trace)
      trace.push_back(event_to_json(event));
    violations.push_back(json{
        {"kind", v.kind}, {"message", v.message}, {"trace", std::move(trace)}});
  }
  return json{{"name", report.name},
              {"verdict", to_string(report.verdict)},
              {"paths",
               {{"complete", report.paths.complete},
                {"pruned", report.paths.pruned},
                {"failed", report.paths.failed},
                {"depth_exhausted", report.paths.depth_exhausted}}},
              {"violations", std::move(violations)},
              {"duration_ms", report.duration_ms},
              {"config", config_to_json(report.config)}};
}

ProofReport proof_from_json(const json& j) {
  ProofReport report;
  report.name = j.at("name").get<std::string>();
  report.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  const json& paths = j.at("paths");
  report.paths.complete = paths.at("complete").get<int64_t>();
  report.paths.pruned = paths.at("pruned").get<int64_t>();
  report.paths.failed = paths.at("failed").get<int64_t>();
  report.paths.depth_exhausted = paths.at("depth_exhausted").get<int64_t>();
  for (const json& jv : j.at("violations")) {
    Violation v;
    v.kind = jv.at("kind").get<std::string>();
    v.message = jv.at("message").get<std::string>();
    for (const json& je : jv.at("trace"))
      v.trace.push_back(event_from_json(je));
    report.violations.push_back(std::move(v));
  }
  report.duration_ms = j.at("duration_ms").get<double>();
  report.config = config_from_json(j.at("config"));
  return report;
}

} // namespace

std::string render_text(const RunReport& run) {
  std::ostringstream out;
  for (const ProofReport& report : run.reports) {
    const char* tag = report.verdict == Verdict::Pass           ? "PASS"
                      : report.verdict == Verdict::Fail         ? "FAIL"
                                                                : "INCONCLUSIVE";
    out << "[" << tag << "] " << report.name << "  paths: complete="
        << report.paths.complete << " pruned=" << report.paths.pruned
        << " failed=" << report.paths.failed
        << " depth_exhausted=" << report.paths.depth_exhausted << "  ("
        << report.duration_ms << " ms)\n";
    for (size_t i = 0; i < report.violations.size(); ++i) {
      const Violation& v = report.violations[i];
      out << "  violation " << (i + 1) << "/" << report.violations.size()
          << ": " << v.message << "\n";
      std::istringstream lines(render_trace(v));
      std::string line;
      while (std::getline(lines, line))
        out << "    " << line << "\n";
    }
  }
  int64_t passed = 0, failed = 0, inconclusive = 0;
  for (const ProofReport& report : run.reports) {
    switch (report.verdict) {
    case Verdict::Pass:
      ++passed;
      break;
    case Verdict::Fail:
      ++failed;
      break;
    case Verdict::Inconclusive:
      ++inconclusive;
      break;
    }
  }
  out << passed << " passed, " << failed << " failed, " << inconclusive
      << " inconclusive\n";
  return out.str();
}

std::string render_json(const RunReport& run) {
  json proofs = json::array();
  for (const ProofReport& report : run.reports)
    proofs.push_back(proof_to_json(report));
  json root{{"tool_version", run.tool_version},
            {"config", config_to_json(run.config)},
            {"proofs", std::move(proofs)}};
  return root.dump(2) + "\n";
}

RunReport parse_json(const std::string& text) {
  json root = json::parse(text);
  RunReport run;
  run.tool_version = root.at("tool_version").get<std::string>();
  run.config = config_from_json(root.at("config"));
  for (const json& jp : root.at("proofs"))
    run.reports.push_back(proof_from_json(jp));
  return run;
}

RunReport strip_durations(RunReport run) {
  for (ProofReport& report : run.reports)
    report.duration_ms = 0.0;
  return run;
}

} // namespace vproof
