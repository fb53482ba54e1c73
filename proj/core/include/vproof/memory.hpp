#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace vproof {

/// Opaque handle to a tracked buffer. Valid only within the ExecutionContext
/// that allocated it.
struct BufferRef {
  static constexpr uint32_t kInvalid = std::numeric_limits<uint32_t>::max();
  uint32_t id = kInvalid;

  bool valid() const { return id != kInvalid; }
  bool operator==(const BufferRef&) const = default;
};

/// Per-byte content state. Havoc bytes carry an identity so that copies
/// alias: materializing either copy fixes both for the rest of the path.
enum class ByteState : uint8_t { Uninit, Havoc, Concrete };

struct TrackedBuffer {
  uint64_t size = 0;
  bool taint_armed = false;
  bool taint_dirty = false;
  bool freed = false;
  std::vector<ByteState> state;
  std::vector<uint8_t> data;
  std::vector<uint32_t> havoc_id; // meaningful only where state == Havoc
};

/// Buffer-granular store: object-level bounds, no cross-allocation
/// arithmetic. Lives inside an ExecutionContext, so all mutation is
/// path-local by construction.
class MemoryStore {
public:
  BufferRef allocate(uint64_t size);
  TrackedBuffer& at(BufferRef ref);
  const TrackedBuffer& at(BufferRef ref) const;
  bool known(BufferRef ref) const { return ref.id < buffers_.size(); }

  uint32_t fresh_havoc_id() { return next_havoc_id_++; }
  bool lookup_havoc(uint32_t id, uint8_t& out) const;
  void remember_havoc(uint32_t id, uint8_t value);

  int64_t live_count() const { return live_; }
  void note_freed() { --live_; }

private:
  std::vector<TrackedBuffer> buffers_;
  std::unordered_map<uint32_t, uint8_t> havoc_values_;
  uint32_t next_havoc_id_ = 0;
  int64_t live_ = 0;
};

} // namespace vproof
