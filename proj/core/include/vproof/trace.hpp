#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace vproof {

// One entry of a path's event trace. Traces are the replayable record of a
// path: choices carry enough information to force the same path again, and
// every failed path ends with at least one violation-kind event.

struct ChoiceEvent {
  int32_t id = 0; // ordinal of the choice point within the path
  std::string label;
  int64_t value = 0;
  bool operator==(const ChoiceEvent&) const = default;
};

struct MockCallEvent {
  std::string handle;
  std::string args;
  bool operator==(const MockCallEvent&) const = default;
};

struct AssumeEvent {
  bool result = true;
  bool operator==(const AssumeEvent&) const = default;
};

struct AssertFailEvent {
  std::string message;
  std::string site;
  bool operator==(const AssertFailEvent&) const = default;
};

enum class MemViolationKind {
  OutOfBounds,
  UseAfterFree,
  DoubleFree,
  UninitializedRead,
};

std::string to_string(MemViolationKind kind);
MemViolationKind mem_violation_kind_from_string(const std::string& text);

struct MemViolationEvent {
  MemViolationKind violation = MemViolationKind::OutOfBounds;
  uint32_t buffer = 0;
  uint64_t offset = 0;
  uint64_t len = 0;
  uint64_t size = 0;
  bool operator==(const MemViolationEvent&) const = default;
};

struct OrderViolationEvent {
  std::string handle;
  std::string missing_predecessor;
  bool operator==(const OrderViolationEvent&) const = default;
};

struct CardinalityViolationEvent {
  std::string handle;
  std::string predicate;
  uint64_t actual = 0;
  bool operator==(const CardinalityViolationEvent&) const = default;
};

using TraceEvent =
    std::variant<ChoiceEvent, MockCallEvent, AssumeEvent, AssertFailEvent,
                 MemViolationEvent, OrderViolationEvent,
                 CardinalityViolationEvent>;

bool is_violation_event(const TraceEvent& event);

/// Kind tag as used in reports: "choice", "mock_call", "assume",
/// "assert_fail", "mem_violation", "order_violation",
/// "cardinality_violation".
std::string event_kind(const TraceEvent& event);

/// One-line rendering without the trace ordinal prefix.
std::string render_event(const TraceEvent& event);

} // namespace vproof
