#pragma once

#include "vproof/cardinality.hpp"
#include "vproof/choice.hpp"
#include "vproof/memory.hpp"
#include "vproof/trace.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vproof {

enum class PathStatus { Active, Pruned, Failed, Complete, DepthExhausted };

std::string to_string(PathStatus status);

/// Unwinding token thrown when a path ends early (prune, failure, depth
/// exhaustion). Deliberately not derived from std::exception so proof bodies
/// that catch std::exception cannot swallow it.
struct PathEnd {};

struct ChoiceRecord {
  int64_t value = 0;
  uint32_t domain_size = 0;
};

/// Supplies the index to bind at each choice point. Implemented by the
/// exploration driver (depth-first enumeration) and the replay driver
/// (forced trail).
class ChoiceSource {
public:
  virtual ~ChoiceSource() = default;
  virtual uint32_t next(const ChoiceDomain& resolved) = 0;
};

struct MockInfo {
  std::string name;
  Cardinality cardinality;
};

struct PostCheck {
  int handle_id = -1;
  Cardinality cardinality;
};

/// All state of one exploration path: the choice trail, the event trace,
/// mock call counters, proof-scoped cells, and the tracked memory store.
/// A context is confined to one worker and never shared between paths;
/// sibling paths observe none of its mutations.
class ExecutionContext {
public:
  ExecutionContext(std::string proof_name, int max_depth, bool strict_uninit,
                   ChoiceDomain resolved_byte_domain, uint64_t seed,
                   ChoiceSource* source);

  ExecutionContext(const ExecutionContext&) = delete;
  ExecutionContext& operator=(const ExecutionContext&) = delete;

  PathStatus status() const { return status_; }
  const std::string& proof_name() const { return proof_name_; }
  const std::vector<ChoiceRecord>& trail() const { return trail_; }
  std::vector<int64_t> trail_values() const;
  const std::vector<TraceEvent>& trace() const { return trace_; }
  int64_t live_buffer_count() const { return memory_.live_count(); }
  bool strict_uninit() const { return strict_uninit_; }

  // -- choices, assumptions, assertions ------------------------------------

  /// Binds one value of `domain` for this path; the driver guarantees that
  /// sibling paths cover the rest. Ends the path as depth-exhausted once
  /// max_depth choices have been made.
  int64_t nd_value(const ChoiceDomain& domain, std::string_view label = {});

  /// Prunes the path when cond is false; pruned paths contribute no verdict.
  void assume(bool cond);

  /// Records an assertion failure and ends the path when cond is false.
  /// Failure is data in the trace, never a C++ exception to the caller.
  void sassert(bool cond, std::string_view message, std::string_view site = {});

  // -- tracked memory -------------------------------------------------------

  BufferRef alloc(uint64_t size);
  void free_buffer(BufferRef ref);
  bool is_deref(BufferRef ref, uint64_t n) const;
  bool is_deref(BufferRef ref, uint64_t offset, uint64_t len) const;
  void memhavoc(BufferRef ref);
  void reset_modified(BufferRef ref);
  bool is_modified(BufferRef ref);
  std::vector<uint8_t> mem_read(BufferRef ref, uint64_t offset, uint64_t len);
  uint8_t mem_read_byte(BufferRef ref, uint64_t offset);
  void mem_write(BufferRef ref, uint64_t offset,
                 std::span<const uint8_t> bytes);
  void mem_write_byte(BufferRef ref, uint64_t offset, uint8_t value);
  void mem_copy(BufferRef dst, BufferRef src, uint64_t len);
  void mem_copy(BufferRef dst, uint64_t dst_offset, BufferRef src,
                uint64_t src_offset, uint64_t len);
  /// True iff every byte of the region is within bounds and initialized
  /// (concrete or havoc). Pure query: never materializes, never violates.
  bool is_init_region(BufferRef ref, uint64_t offset, uint64_t len) const;
  uint64_t buffer_size(BufferRef ref) const;

  // -- mock dispatch support ------------------------------------------------

  /// Registers a named handle (mock or call probe). Handle identity is the
  /// returned index; dispatch never looks anything up by name at call time.
  int register_handle(std::string name, Cardinality cardinality);
  void record_call(int handle_id, std::string args_summary);
  uint64_t call_count(int handle_id) const;
  const std::string& handle_name(int handle_id) const;
  const std::vector<MockInfo>& handles() const { return mocks_; }
  void record_order_violation(int handle_id,
                              const std::string& missing_predecessor);
  /// Marks the path failed and unwinds. The caller must already have
  /// recorded at least one violation event.
  [[noreturn]] void fail_path();

  void add_post_check(int handle_id, Cardinality cardinality);
  const std::vector<PostCheck>& post_checks() const { return post_checks_; }

  // -- proof-scoped cells ---------------------------------------------------

  int make_cell(std::string name, int64_t initial);
  int64_t cell_read(int cell_id) const;
  void cell_write(int cell_id, int64_t value);

  // -- engine internals -----------------------------------------------------

  /// Runs end-of-path post-checks; flips Active to Complete or Failed.
  void finalize_path();
  [[noreturn]] void mem_violation(MemViolationKind kind, BufferRef ref,
                                  uint64_t offset, uint64_t len);

private:
  const ChoiceDomain& resolve(const ChoiceDomain& domain,
                              ChoiceDomain& storage) const;
  void require_active(const char* op) const;
  TrackedBuffer& access(BufferRef ref, uint64_t offset, uint64_t len,
                        const char* op);
  uint8_t materialize_byte(TrackedBuffer& buf, BufferRef ref, uint64_t offset);

  std::string proof_name_;
  int max_depth_;
  bool strict_uninit_;
  ChoiceDomain byte_domain_;
  uint64_t seed_;
  ChoiceSource* source_;

  PathStatus status_ = PathStatus::Active;
  std::vector<ChoiceRecord> trail_;
  std::vector<TraceEvent> trace_;
  MemoryStore memory_;
  std::vector<MockInfo> mocks_;
  std::vector<uint64_t> counters_;
  std::unordered_set<std::string> mock_names_;
  std::vector<PostCheck> post_checks_;
  std::vector<int64_t> cells_;
  std::vector<std::string> cell_names_;
};

// Free-function spelling of the builtin surface, so proof code reads as a
// sequence of builtins over an explicit context.

inline int64_t nd_value(ExecutionContext& ctx, const ChoiceDomain& domain,
                        std::string_view label = {}) {
  return ctx.nd_value(domain, label);
}
inline void assume(ExecutionContext& ctx, bool cond) { ctx.assume(cond); }
inline void sassert(ExecutionContext& ctx, bool cond, std::string_view message,
                    std::string_view site = {}) {
  ctx.sassert(cond, message, site);
}
inline BufferRef alloc(ExecutionContext& ctx, uint64_t size) {
  return ctx.alloc(size);
}
inline void free(ExecutionContext& ctx, BufferRef ref) {
  ctx.free_buffer(ref);
}
inline bool is_deref(ExecutionContext& ctx, BufferRef ref, uint64_t n) {
  return ctx.is_deref(ref, n);
}
inline void memhavoc(ExecutionContext& ctx, BufferRef ref) {
  ctx.memhavoc(ref);
}
inline void reset_modified(ExecutionContext& ctx, BufferRef ref) {
  ctx.reset_modified(ref);
}
inline bool is_modified(ExecutionContext& ctx, BufferRef ref) {
  return ctx.is_modified(ref);
}
inline std::vector<uint8_t> mem_read(ExecutionContext& ctx, BufferRef ref,
                                     uint64_t offset, uint64_t len) {
  return ctx.mem_read(ref, offset, len);
}
inline void mem_write(ExecutionContext& ctx, BufferRef ref, uint64_t offset,
                      std::span<const uint8_t> bytes) {
  ctx.mem_write(ref, offset, bytes);
}
inline void mem_copy(ExecutionContext& ctx, BufferRef dst, BufferRef src,
                     uint64_t len) {
  ctx.mem_copy(dst, src, len);
}

} // namespace vproof
