#include "vproof/trace.hpp"

#include "vproof/choice.hpp"

namespace vproof {

std::string to_string(MemViolationKind kind) {
  switch (kind) {
  case MemViolationKind::OutOfBounds:
    return "out-of-bounds";
  case MemViolationKind::UseAfterFree:
    return "use-after-free";
  case MemViolationKind::DoubleFree:
    return "double-free";
  case MemViolationKind::UninitializedRead:
    return "uninitialized-read";
  }
  return "out-of-bounds";
}

MemViolationKind mem_violation_kind_from_string(const std::string& text) {
  if (text == "out-of-bounds")
    return MemViolationKind::OutOfBounds;
  if (text == "use-after-free")
    return MemViolationKind::UseAfterFree;
  if (text == "double-free")
    return MemViolationKind::DoubleFree;
  if (text == "uninitialized-read")
    return MemViolationKind::UninitializedRead;
  throw ConfigError("unknown memory violation kind: " + text);
}

bool is_violation_event(const TraceEvent& event) {
  return std::holds_alternative<AssertFailEvent>(event) ||
         std::holds_alternative<MemViolationEvent>(event) ||
         std::holds_alternative<OrderViolationEvent>(event) ||
         std::holds_alternative<CardinalityViolationEvent>(event);
}

std::string event_kind(const TraceEvent& event) {
  struct Visitor {
    std::string operator()(const ChoiceEvent&) const { return "choice"; }
    std::string operator()(const MockCallEvent&) const { return "mock_call"; }
    std::string operator()(const AssumeEvent&) const { return "assume"; }
    std::string operator()(const AssertFailEvent&) const {
      return "assert_fail";
    }
    std::string operator()(const MemViolationEvent&) const {
      return "mem_violation";
    }
    std::string operator()(const OrderViolationEvent&) const {
      return "order_violation";
    }
    std::string operator()(const CardinalityViolationEvent&) const {
      return "cardinality_violation";
    }
  };
  return std::visit(Visitor{}, event);
}

std::string render_event(const TraceEvent& event) {
  struct Visitor {
    std::string operator()(const ChoiceEvent& e) const {
      std::string out = "choice [" + std::to_string(e.id) + "]";
      if (!e.label.empty())
        out += " " + e.label;
      out += " = " + std::to_string(e.value);
      return out;
    }
    std::string operator()(const MockCallEvent& e) const {
      return "mock_call " + e.handle + e.args;
    }
    std::string operator()(const AssumeEvent& e) const {
      return std::string("assume ") + (e.result ? "true" : "false");
    }
    std::string operator()(const AssertFailEvent& e) const {
      return "assert_fail \"" + e.message + "\" @" + e.site;
    }
    std::string operator()(const MemViolationEvent& e) const {
      return "mem_violation " + to_string(e.violation) + " buf#" +
             std::to_string(e.buffer) + " offset " + std::to_string(e.offset) +
             " len " + std::to_string(e.len) + " size " +
             std::to_string(e.size);
    }
    std::string operator()(const OrderViolationEvent& e) const {
      return "order_violation " + e.handle + " missing-predecessor " +
             e.missing_predecessor;
    }
    std::string operator()(const CardinalityViolationEvent& e) const {
      return "cardinality_violation " + e.handle + " expected " + e.predicate +
             " actual " + std::to_string(e.actual);
    }
  };
  return std::visit(Visitor{}, event);
}

} // namespace vproof
