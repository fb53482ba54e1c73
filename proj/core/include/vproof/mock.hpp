#pragma once

#include "vproof/cardinality.hpp"
#include "vproof/context.hpp"

#include <algorithm>
#include <any>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace vproof {

/// Identity of a constructed mock within its proof. Carried by expectation
/// records as ordering predecessors.
struct MockRef {
  int id = -1;
  std::string name;
};

namespace detail {

// Deduces (return type, argument tuple) of a non-generic callable. Generic
// lambdas and overloaded call operators are not supported by the DSL.
template <typename T>
struct callable_traits : callable_traits<decltype(&T::operator())> {};

template <typename R, typename... A>
struct callable_traits<R (*)(A...)> {
  using ret = R;
  using args = std::tuple<A...>;
};

template <typename R, typename... A>
struct callable_traits<R(A...)> : callable_traits<R (*)(A...)> {};

template <typename C, typename R, typename... A>
struct callable_traits<R (C::*)(A...)> : callable_traits<R (*)(A...)> {};

template <typename C, typename R, typename... A>
struct callable_traits<R (C::*)(A...) const> : callable_traits<R (*)(A...)> {};

template <typename F, typename... Rest>
std::function<int64_t(ExecutionContext&, Rest...)>
wrap_invoke_with_result(F fn, std::tuple<ExecutionContext&, Rest...>*) {
  return [fn = std::move(fn)](ExecutionContext& ctx, Rest... rest) {
    return static_cast<int64_t>(fn(ctx, rest...));
  };
}

template <typename F, typename... Rest>
std::function<void(ExecutionContext&, Rest...)>
wrap_invoke_void(F fn, std::tuple<ExecutionContext&, Rest...>*) {
  return [fn = std::move(fn)](ExecutionContext& ctx, Rest... rest) {
    fn(ctx, rest...);
  };
}

inline void summarize_one(std::string& out, BufferRef ref) {
  out += "buf#" + std::to_string(ref.id);
}

template <typename T>
void summarize_one(std::string& out, const T& value) {
  if constexpr (std::is_integral_v<T>)
    out += std::to_string(static_cast<long long>(value));
  else if constexpr (std::is_pointer_v<T>)
    out += "&_";
  else
    out += "?";
}

template <typename... A>
std::string summarize_args(const A&... args) {
  std::string out = "(";
  bool first = true;
  ((out += (first ? "" : ", "), first = false, summarize_one(out, args)), ...);
  (void)first;
  out += ")";
  return out;
}

} // namespace detail

/// Immutable expectation map built by ExpectationBuilder. Carries the call
/// cardinality, the return action, the ordered capture map, the invoke
/// action, and ordering predecessors. Argument positions and action
/// signatures are validated when the record is bound to a mock signature.
class ExpectationRecord {
public:
  struct CaptureSlot {
    size_t index = 0;
    std::any action; // std::function<void(ExecutionContext&, ArgT)>
    std::string arg_type;
  };

  ExpectationRecord() = default; // all defaults: Any, no actions, no order

  const Cardinality& cardinality() const { return cardinality_; }
  const std::function<int64_t(ExecutionContext&)>& return_action() const {
    return return_action_;
  }
  const std::vector<CaptureSlot>& captures() const { return captures_; }
  bool has_invoke() const { return has_invoke_; }
  bool invoke_returns() const { return invoke_returns_; }
  const std::any& invoke_action() const { return invoke_action_; }
  const std::vector<MockRef>& predecessors() const { return predecessors_; }

  /// Copy of this record with extra ordering predecessors merged in.
  ExpectationRecord with_predecessors(std::vector<MockRef> preds) const {
    ExpectationRecord out = *this;
    for (auto& pred : preds) {
      bool known = false;
      for (const auto& existing : out.predecessors_)
        known = known || existing.id == pred.id;
      if (!known)
        out.predecessors_.push_back(std::move(pred));
    }
    return out;
  }

private:
  friend class ExpectationBuilder;

  Cardinality cardinality_ = Cardinality::any();
  std::function<int64_t(ExecutionContext&)> return_action_;
  std::vector<CaptureSlot> captures_;
  std::any invoke_action_;
  bool has_invoke_ = false;
  bool invoke_returns_ = false;
  std::vector<MockRef> predecessors_;
};

/// Fluent, value-semantics builder: every setter returns a new builder and
/// leaves the receiver unchanged, so chains may be forked. Each setter may
/// appear at most once per chain; captureArgAndInvoke may repeat with
/// distinct argument positions.
class ExpectationBuilder {
public:
  ExpectationBuilder() = default;

  ExpectationBuilder times(Cardinality cardinality) const {
    if (times_set_)
      throw ConfigError("times() already set on this expectation chain");
    ExpectationBuilder next = *this;
    next.record_.cardinality_ = cardinality;
    next.times_set_ = true;
    return next;
  }

  /// Return action: callable () -> integral or (ExecutionContext&) -> integral,
  /// applied at every call to produce the return value.
  template <typename F>
  ExpectationBuilder returnFn(F f) const {
    if (return_set_)
      throw ConfigError("returnFn() already set on this expectation chain");
    using Traits = detail::callable_traits<std::remove_cvref_t<F>>;
    using Args = typename Traits::args;
    static_assert(std::is_integral_v<typename Traits::ret>,
                  "return action must produce an integral value");
    ExpectationBuilder next = *this;
    if constexpr (std::tuple_size_v<Args> == 0) {
      next.record_.return_action_ = [fn = std::move(f)](ExecutionContext&) {
        return static_cast<int64_t>(fn());
      };
    } else {
      static_assert(
          std::tuple_size_v<Args> == 1 &&
              std::is_same_v<std::tuple_element_t<0, Args>, ExecutionContext&>,
          "return action must take () or (ExecutionContext&)");
      next.record_.return_action_ = [fn = std::move(f)](ExecutionContext& ctx) {
        return static_cast<int64_t>(fn(ctx));
      };
    }
    next.return_set_ = true;
    return next;
  }

  /// Capture action for argument position `index`: callable
  /// (ExecutionContext&, ArgT) or (ArgT). Applied argument-position
  /// left-to-right at every call, before the return action.
  template <typename F>
  ExpectationBuilder captureArgAndInvoke(size_t index, F f) const {
    for (const auto& slot : record_.captures_)
      if (slot.index == index)
        throw ConfigError("captureArgAndInvoke() already set for argument " +
                          std::to_string(index));
    using Traits = detail::callable_traits<std::remove_cvref_t<F>>;
    using Args = typename Traits::args;
    constexpr size_t n = std::tuple_size_v<Args>;
    static_assert(n == 1 || n == 2,
                  "capture action must take (ArgT) or (ExecutionContext&, ArgT)");
    ExpectationBuilder next = *this;
    ExpectationRecord::CaptureSlot slot;
    slot.index = index;
    if constexpr (n == 2) {
      static_assert(
          std::is_same_v<std::tuple_element_t<0, Args>, ExecutionContext&>,
          "two-argument capture actions take (ExecutionContext&, ArgT)");
      using ArgT = std::tuple_element_t<1, Args>;
      slot.action = std::function<void(ExecutionContext&, ArgT)>(std::move(f));
      slot.arg_type = typeid(ArgT).name();
    } else {
      using ArgT = std::tuple_element_t<0, Args>;
      slot.action = std::function<void(ExecutionContext&, ArgT)>(
          [fn = std::move(f)](ExecutionContext&, ArgT arg) { fn(arg); });
      slot.arg_type = typeid(ArgT).name();
    }
    next.record_.captures_.push_back(std::move(slot));
    next.capture_count_++;
    return next;
  }

  /// Invoke action: callable (ExecutionContext&, Args...) receiving every
  /// call argument. A non-void result becomes the mock's return value when
  /// no returnFn is set.
  template <typename F>
  ExpectationBuilder invokeFn(F f) const {
    if (invoke_set_)
      throw ConfigError("invokeFn() already set on this expectation chain");
    using Traits = detail::callable_traits<std::remove_cvref_t<F>>;
    using Args = typename Traits::args;
    static_assert(std::tuple_size_v<Args> >= 1 &&
                      std::is_same_v<std::tuple_element_t<0, Args>,
                                     ExecutionContext&>,
                  "invoke action must take (ExecutionContext&, Args...)");
    ExpectationBuilder next = *this;
    using TuplePtr = Args*;
    if constexpr (std::is_void_v<typename Traits::ret>) {
      next.record_.invoke_action_ =
          detail::wrap_invoke_void(std::move(f), TuplePtr{nullptr});
      next.record_.invoke_returns_ = false;
    } else {
      static_assert(std::is_integral_v<typename Traits::ret>,
                    "invoke action result must be integral or void");
      next.record_.invoke_action_ =
          detail::wrap_invoke_with_result(std::move(f), TuplePtr{nullptr});
      next.record_.invoke_returns_ = true;
    }
    next.record_.has_invoke_ = true;
    next.invoke_set_ = true;
    return next;
  }

  /// Ordering constraint: every call to the mock must be preceded by at
  /// least one call to each predecessor on the same path.
  ExpectationBuilder after(std::vector<MockRef> predecessors) const {
    if (after_set_)
      throw ConfigError("after() already set on this expectation chain");
    ExpectationBuilder next = *this;
    next.record_ = next.record_.with_predecessors(std::move(predecessors));
    next.after_set_ = true;
    return next;
  }

  /// Freezes the record. Unset expectations keep their defaults.
  ExpectationRecord build() const {
    if (return_set_ && invoke_set_)
      throw ConfigError(
          "returnFn() and invokeFn() are mutually exclusive on one expectation");
    ExpectationRecord out = record_;
    std::sort(out.captures_.begin(), out.captures_.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });
    return out;
  }

private:
  ExpectationRecord record_;
  bool times_set_ = false;
  bool return_set_ = false;
  bool invoke_set_ = false;
  bool after_set_ = false;
  int capture_count_ = 0;
};

template <typename Sig>
class Mock;

/// A statically bound mock function. Construction binds the expectation
/// record to the concrete signature once: argument positions and action
/// types are checked, and the call plan is compiled into direct callables.
/// Invocation touches only this handle's own state; there is no registry
/// consulted and nothing keyed by the mock's name on the call path.
template <typename R, typename... Args>
class Mock<R(Args...)> {
public:
  static constexpr size_t kArity = sizeof...(Args);
  using ArgsTuple = std::tuple<Args...>;

  Mock(ExecutionContext& ctx, std::string name, const ExpectationRecord& record,
       std::optional<ChoiceDomain> return_domain = std::nullopt)
      : name_(std::move(name)),
        return_domain_(return_domain ? *return_domain : ChoiceDomain::bytes()),
        predecessors_(record.predecessors()) {
    static_assert(std::is_void_v<R> || std::is_integral_v<R>,
                  "mock return type must be void or an integral type");
    id_ = ctx.register_handle(name_, record.cardinality());
    return_label_ = name_ + ".ret";
    for (const auto& slot : record.captures())
      captures_.push_back(bind_capture(slot));
    if (record.return_action()) {
      if (std::is_void_v<R>)
        throw ConfigError("returnFn() set on void-returning mock " + name_);
      return_action_ = record.return_action();
    }
    if (record.has_invoke())
      bind_invoke(record);
  }

  R operator()(ExecutionContext& ctx, Args... args) const {
    ctx.record_call(id_, detail::summarize_args(args...));
    bool order_breached = false;
    for (const MockRef& pred : predecessors_) {
      if (ctx.call_count(pred.id) == 0) {
        ctx.record_order_violation(id_, pred.name);
        order_breached = true;
      }
    }
    if (order_breached)
      ctx.fail_path();
    ArgsTuple tuple(args...);
    for (const auto& capture : captures_)
      capture(ctx, tuple);
    if constexpr (std::is_void_v<R>) {
      if (invoke_with_result_)
        (void)invoke_with_result_(ctx, args...);
      else if (invoke_void_)
        invoke_void_(ctx, args...);
    } else {
      int64_t out = 0;
      if (return_action_) {
        out = return_action_(ctx);
      } else if (invoke_with_result_) {
        out = invoke_with_result_(ctx, args...);
      } else {
        if (invoke_void_)
          invoke_void_(ctx, args...);
        out = ctx.nd_value(return_domain_, return_label_);
      }
      return static_cast<R>(out);
    }
  }

  MockRef ref() const { return {id_, name_}; }
  int id() const { return id_; }
  const std::string& name() const { return name_; }

private:
  using CaptureFn = std::function<void(ExecutionContext&, ArgsTuple&)>;

  CaptureFn bind_capture(const ExpectationRecord::CaptureSlot& slot) const {
    if (slot.index >= kArity)
      throw ConfigError("capture index " + std::to_string(slot.index) +
                        " out of range for " + std::to_string(kArity) +
                        "-argument mock " + name_);
    CaptureFn out;
    bool bound =
        try_bind_capture(slot, out, std::make_index_sequence<kArity>{});
    if (!bound)
      throw ConfigError("capture action at index " + std::to_string(slot.index) +
                        " does not accept the argument type of mock " + name_);
    return out;
  }

  template <size_t... Is>
  bool try_bind_capture(const ExpectationRecord::CaptureSlot& slot,
                        CaptureFn& out, std::index_sequence<Is...>) const {
    return (bind_capture_at<Is>(slot, out) || ...);
  }

  template <size_t I>
  bool bind_capture_at(const ExpectationRecord::CaptureSlot& slot,
                       CaptureFn& out) const {
    if (slot.index != I)
      return false;
    using ArgT = std::tuple_element_t<I, ArgsTuple>;
    const auto* action =
        std::any_cast<std::function<void(ExecutionContext&, ArgT)>>(
            &slot.action);
    if (!action)
      return false;
    out = [fn = *action](ExecutionContext& ctx, ArgsTuple& tuple) {
      fn(ctx, std::get<I>(tuple));
    };
    return true;
  }

  void bind_invoke(const ExpectationRecord& record) {
    if (record.invoke_returns()) {
      using FnT = std::function<int64_t(ExecutionContext&, Args...)>;
      const FnT* fn = std::any_cast<FnT>(&record.invoke_action());
      if (!fn)
        throw ConfigError("invokeFn() signature does not match mock " + name_);
      invoke_with_result_ = *fn;
    } else {
      using FnT = std::function<void(ExecutionContext&, Args...)>;
      const FnT* fn = std::any_cast<FnT>(&record.invoke_action());
      if (!fn)
        throw ConfigError("invokeFn() signature does not match mock " + name_);
      invoke_void_ = *fn;
    }
  }

  int id_ = -1;
  std::string name_;
  std::string return_label_;
  std::function<int64_t(ExecutionContext&)> return_action_;
  std::vector<CaptureFn> captures_;
  std::function<int64_t(ExecutionContext&, Args...)> invoke_with_result_;
  std::function<void(ExecutionContext&, Args...)> invoke_void_;
  ChoiceDomain return_domain_;
  std::vector<MockRef> predecessors_;
};

template <typename Sig>
Mock<Sig> make_mock(ExecutionContext& ctx, std::string name,
                    const ExpectationRecord& record,
                    std::optional<ChoiceDomain> return_domain = std::nullopt) {
  return Mock<Sig>(ctx, std::move(name), record, std::move(return_domain));
}

template <typename Sig>
Mock<Sig> make_ordered_mock(ExecutionContext& ctx, std::string name,
                            const ExpectationRecord& record,
                            std::vector<MockRef> predecessors,
                            std::optional<ChoiceDomain> return_domain =
                                std::nullopt) {
  return Mock<Sig>(ctx, std::move(name),
                   record.with_predecessors(std::move(predecessors)),
                   std::move(return_domain));
}

/// A mock with no expectations: every call returns a fresh nondeterministic
/// value from `return_domain` (none for void signatures), arguments are
/// ignored, any call count is accepted.
template <typename Sig>
Mock<Sig> lazy_mock(ExecutionContext& ctx, std::string name,
                    std::optional<ChoiceDomain> return_domain = std::nullopt) {
  return Mock<Sig>(ctx, std::move(name), ExpectationRecord{},
                   std::move(return_domain));
}

/// Registers end-of-path cardinality checks for the given handles. Breaches
/// fail the path; pruned and depth-exhausted paths are not checked.
inline void setup_post_checks(ExecutionContext& ctx,
                              const std::vector<MockRef>& handles) {
  for (const MockRef& handle : handles) {
    if (handle.id < 0 ||
        static_cast<size_t>(handle.id) >= ctx.handles().size())
      throw ConfigError("post-check over a handle not registered in this proof");
    ctx.add_post_check(handle.id,
                       ctx.handles()[static_cast<size_t>(handle.id)].cardinality);
  }
}

inline void setup_post_checks(ExecutionContext& ctx,
                              std::initializer_list<MockRef> handles) {
  setup_post_checks(ctx, std::vector<MockRef>(handles));
}

/// Proof-scoped mutable scalar living in the ExecutionContext, so every
/// path sees its own copy. The shared state harnesses and mock actions
/// exchange (message sizes, minimum byte counts) goes through these.
class EnvCell {
public:
  EnvCell(ExecutionContext& ctx, std::string name, int64_t initial)
      : id_(ctx.make_cell(name, initial)), name_(std::move(name)) {}

  int64_t read(ExecutionContext& ctx) const { return ctx.cell_read(id_); }
  void write(ExecutionContext& ctx, int64_t value) const {
    ctx.cell_write(id_, value);
  }
  int id() const { return id_; }
  const std::string& name() const { return name_; }

private:
  int id_;
  std::string name_;
};

/// Return action reading the cell's current per-path value at call time.
inline auto wrap_cell(const EnvCell& cell) {
  return [cell](ExecutionContext& ctx) { return cell.read(ctx); };
}

/// Named call-recording handle for hand-written environments: shows up in
/// traces and counters exactly like a mock call, with no attached behavior.
class CallProbe {
public:
  CallProbe(ExecutionContext& ctx, std::string name)
      : id_(ctx.register_handle(name, Cardinality::any())),
        name_(std::move(name)) {}

  void hit(ExecutionContext& ctx, std::string args = "()") const {
    ctx.record_call(id_, std::move(args));
  }
  MockRef ref() const { return {id_, name_}; }

private:
  int id_;
  std::string name_;
};

} // namespace vproof
