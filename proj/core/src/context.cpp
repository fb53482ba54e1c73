#include "vproof/context.hpp"

#include <algorithm>

namespace vproof {

std::string to_string(PathStatus status) {
  switch (status) {
  case PathStatus::Active:
    return "active";
  case PathStatus::Pruned:
    return "pruned";
  case PathStatus::Failed:
    return "failed";
  case PathStatus::Complete:
    return "complete";
  case PathStatus::DepthExhausted:
    return "depth-exhausted";
  }
  return "active";
}

ExecutionContext::ExecutionContext(std::string proof_name, int max_depth,
                                   bool strict_uninit,
                                   ChoiceDomain resolved_byte_domain,
                                   uint64_t seed, ChoiceSource* source)
    : proof_name_(std::move(proof_name)), max_depth_(max_depth),
      strict_uninit_(strict_uninit),
      byte_domain_(std::move(resolved_byte_domain)), seed_(seed),
      source_(source) {
  trail_.reserve(16);
  trace_.reserve(32);
}

std::vector<int64_t> ExecutionContext::trail_values() const {
  std::vector<int64_t> out;
  out.reserve(trail_.size());
  for (const auto& rec : trail_)
    out.push_back(rec.value);
  return out;
}

void ExecutionContext::require_active(const char* op) const {
  if (status_ != PathStatus::Active)
    throw ConfigError(std::string(op) + " requires an active path");
}

const ChoiceDomain& ExecutionContext::resolve(const ChoiceDomain& domain,
                                              ChoiceDomain& storage) const {
  if (!domain.is_bytes())
    return domain;
  if (!domain.has_own_profile())
    return byte_domain_;
  storage = ChoiceDomain::of(resolve_byte_profile(domain.profile(), seed_));
  return storage;
}

int64_t ExecutionContext::nd_value(const ChoiceDomain& domain,
                                   std::string_view label) {
  require_active("nd_value");
  ChoiceDomain storage;
  const ChoiceDomain& resolved = resolve(domain, storage);
  if (static_cast<int>(trail_.size()) >= max_depth_) {
    status_ = PathStatus::DepthExhausted;
    throw PathEnd{};
  }
  uint32_t index = source_->next(resolved);
  int64_t value = resolved.at(index);
  trail_.push_back({value, resolved.size()});
  trace_.emplace_back(ChoiceEvent{static_cast<int32_t>(trail_.size()) - 1,
                                  std::string(label), value});
  return value;
}

void ExecutionContext::assume(bool cond) {
  require_active("assume");
  trace_.emplace_back(AssumeEvent{cond});
  if (!cond) {
    status_ = PathStatus::Pruned;
    throw PathEnd{};
  }
}

void ExecutionContext::sassert(bool cond, std::string_view message,
                               std::string_view site) {
  require_active("sassert");
  if (cond)
    return;
  std::string where = site.empty()
                          ? proof_name_ + ":" + std::string(message)
                          : std::string(site);
  trace_.emplace_back(AssertFailEvent{std::string(message), std::move(where)});
  status_ = PathStatus::Failed;
  throw PathEnd{};
}

// -- memory -------------------------------------------------------------

void ExecutionContext::mem_violation(MemViolationKind kind, BufferRef ref,
                                     uint64_t offset, uint64_t len) {
  uint64_t size = memory_.known(ref) ? memory_.at(ref).size : 0;
  trace_.emplace_back(MemViolationEvent{kind, ref.id, offset, len, size});
  status_ = PathStatus::Failed;
  throw PathEnd{};
}

BufferRef ExecutionContext::alloc(uint64_t size) {
  require_active("alloc");
  return memory_.allocate(size);
}

void ExecutionContext::free_buffer(BufferRef ref) {
  require_active("free");
  TrackedBuffer& buf = memory_.at(ref);
  if (buf.freed)
    mem_violation(MemViolationKind::DoubleFree, ref, 0, 0);
  buf.freed = true;
  memory_.note_freed();
}

bool ExecutionContext::is_deref(BufferRef ref, uint64_t n) const {
  const TrackedBuffer& buf = memory_.at(ref);
  return !buf.freed && n <= buf.size;
}

bool ExecutionContext::is_deref(BufferRef ref, uint64_t offset,
                                uint64_t len) const {
  const TrackedBuffer& buf = memory_.at(ref);
  return !buf.freed && offset <= buf.size && len <= buf.size - offset;
}

TrackedBuffer& ExecutionContext::access(BufferRef ref, uint64_t offset,
                                        uint64_t len, const char* op) {
  require_active(op);
  TrackedBuffer& buf = memory_.at(ref);
  if (buf.freed)
    mem_violation(MemViolationKind::UseAfterFree, ref, offset, len);
  if (offset > buf.size || len > buf.size - offset)
    mem_violation(MemViolationKind::OutOfBounds, ref, offset, len);
  return buf;
}

void ExecutionContext::memhavoc(BufferRef ref) {
  TrackedBuffer& buf = access(ref, 0, 0, "memhavoc");
  for (uint64_t i = 0; i < buf.size; ++i)
    buf.state[i] = ByteState::Havoc;
  buf.havoc_id.resize(buf.size);
  for (uint64_t i = 0; i < buf.size; ++i)
    buf.havoc_id[i] = memory_.fresh_havoc_id();
  if (buf.taint_armed && buf.size > 0)
    buf.taint_dirty = true;
}

void ExecutionContext::reset_modified(BufferRef ref) {
  TrackedBuffer& buf = access(ref, 0, 0, "reset_modified");
  buf.taint_armed = true;
  buf.taint_dirty = false;
}

bool ExecutionContext::is_modified(BufferRef ref) {
  require_active("is_modified");
  TrackedBuffer& buf = memory_.at(ref);
  if (buf.freed)
    mem_violation(MemViolationKind::UseAfterFree, ref, 0, 0);
  return buf.taint_dirty;
}

uint8_t ExecutionContext::materialize_byte(TrackedBuffer& buf, BufferRef ref,
                                           uint64_t offset) {
  switch (buf.state[offset]) {
  case ByteState::Concrete:
    return buf.data[offset];
  case ByteState::Havoc: {
    uint32_t id = buf.havoc_id[offset];
    uint8_t cached = 0;
    if (!memory_.lookup_havoc(id, cached)) {
      cached = static_cast<uint8_t>(
          nd_value(ChoiceDomain::bytes(),
                   "havoc:buf#" + std::to_string(ref.id) + "[" +
                       std::to_string(offset) + "]"));
      memory_.remember_havoc(id, cached);
    }
    buf.state[offset] = ByteState::Concrete;
    buf.data[offset] = cached;
    return cached;
  }
  case ByteState::Uninit:
    if (strict_uninit_)
      mem_violation(MemViolationKind::UninitializedRead, ref, offset, 1);
    return 0;
  }
  return 0;
}

std::vector<uint8_t> ExecutionContext::mem_read(BufferRef ref, uint64_t offset,
                                                uint64_t len) {
  TrackedBuffer& buf = access(ref, offset, len, "mem_read");
  std::vector<uint8_t> out;
  out.reserve(len);
  for (uint64_t i = 0; i < len; ++i)
    out.push_back(materialize_byte(buf, ref, offset + i));
  return out;
}

uint8_t ExecutionContext::mem_read_byte(BufferRef ref, uint64_t offset) {
  TrackedBuffer& buf = access(ref, offset, 1, "mem_read");
  return materialize_byte(buf, ref, offset);
}

void ExecutionContext::mem_write(BufferRef ref, uint64_t offset,
                                 std::span<const uint8_t> bytes) {
  TrackedBuffer& buf = access(ref, offset, bytes.size(), "mem_write");
  for (uint64_t i = 0; i < bytes.size(); ++i) {
    buf.state[offset + i] = ByteState::Concrete;
    buf.data[offset + i] = bytes[i];
  }
  if (buf.taint_armed && !bytes.empty())
    buf.taint_dirty = true;
}

void ExecutionContext::mem_write_byte(BufferRef ref, uint64_t offset,
                                      uint8_t value) {
  mem_write(ref, offset, std::span<const uint8_t>(&value, 1));
}

void ExecutionContext::mem_copy(BufferRef dst, BufferRef src, uint64_t len) {
  mem_copy(dst, 0, src, 0, len);
}

void ExecutionContext::mem_copy(BufferRef dst, uint64_t dst_offset,
                                BufferRef src, uint64_t src_offset,
                                uint64_t len) {
  // Source side is checked first: the copy reads before it writes.
  TrackedBuffer& sbuf = access(src, src_offset, len, "mem_copy");
  if (strict_uninit_) {
    for (uint64_t i = 0; i < len; ++i)
      if (sbuf.state[src_offset + i] == ByteState::Uninit)
        mem_violation(MemViolationKind::UninitializedRead, src, src_offset + i,
                      1);
  }
  TrackedBuffer& dbuf = access(dst, dst_offset, len, "mem_copy");
  for (uint64_t i = 0; i < len; ++i) {
    // Havoc bytes keep their identity across the copy: whichever side is
    // read first materializes both.
    dbuf.state[dst_offset + i] = sbuf.state[src_offset + i];
    dbuf.data[dst_offset + i] = sbuf.data[src_offset + i];
    if (sbuf.state[src_offset + i] == ByteState::Havoc) {
      dbuf.havoc_id.resize(dbuf.size);
      dbuf.havoc_id[dst_offset + i] = sbuf.havoc_id[src_offset + i];
    }
  }
  if (dbuf.taint_armed && len > 0)
    dbuf.taint_dirty = true;
}

bool ExecutionContext::is_init_region(BufferRef ref, uint64_t offset,
                                      uint64_t len) const {
  const TrackedBuffer& buf = memory_.at(ref);
  if (buf.freed || offset > buf.size || len > buf.size - offset)
    return false;
  for (uint64_t i = 0; i < len; ++i)
    if (buf.state[offset + i] == ByteState::Uninit)
      return false;
  return true;
}

uint64_t ExecutionContext::buffer_size(BufferRef ref) const {
  return memory_.at(ref).size;
}

// -- mock dispatch support ----------------------------------------------

int ExecutionContext::register_handle(std::string name,
                                      Cardinality cardinality) {
  if (!mock_names_.insert(name).second)
    throw ConfigError("mock name already registered in this proof: " + name);
  mocks_.push_back({name, cardinality});
  counters_.push_back(0);
  return static_cast<int>(mocks_.size()) - 1;
}

void ExecutionContext::record_call(int handle_id, std::string args_summary) {
  require_active("mock call");
  counters_[static_cast<size_t>(handle_id)]++;
  trace_.emplace_back(MockCallEvent{mocks_[static_cast<size_t>(handle_id)].name,
                                    std::move(args_summary)});
}

uint64_t ExecutionContext::call_count(int handle_id) const {
  if (handle_id < 0 || static_cast<size_t>(handle_id) >= counters_.size())
    throw ConfigError("unknown mock handle");
  return counters_[static_cast<size_t>(handle_id)];
}

const std::string& ExecutionContext::handle_name(int handle_id) const {
  if (handle_id < 0 || static_cast<size_t>(handle_id) >= mocks_.size())
    throw ConfigError("unknown mock handle");
  return mocks_[static_cast<size_t>(handle_id)].name;
}

void ExecutionContext::record_order_violation(
    int handle_id, const std::string& missing_predecessor) {
  trace_.emplace_back(
      OrderViolationEvent{handle_name(handle_id), missing_predecessor});
}

void ExecutionContext::fail_path() {
  status_ = PathStatus::Failed;
  throw PathEnd{};
}

void ExecutionContext::add_post_check(int handle_id, Cardinality cardinality) {
  if (handle_id < 0 || static_cast<size_t>(handle_id) >= mocks_.size())
    throw ConfigError("post-check over a handle not registered in this proof");
  post_checks_.push_back({handle_id, cardinality});
}

void ExecutionContext::finalize_path() {
  if (status_ != PathStatus::Active)
    return;
  bool breached = false;
  for (const PostCheck& check : post_checks_) {
    uint64_t count = counters_[static_cast<size_t>(check.handle_id)];
    if (!check.cardinality.eval(count)) {
      trace_.emplace_back(
          CardinalityViolationEvent{mocks_[static_cast<size_t>(check.handle_id)].name,
                                    check.cardinality.describe(), count});
      breached = true;
    }
  }
  status_ = breached ? PathStatus::Failed : PathStatus::Complete;
}

// -- proof-scoped cells ---------------------------------------------------

int ExecutionContext::make_cell(std::string name, int64_t initial) {
  cells_.push_back(initial);
  cell_names_.push_back(std::move(name));
  return static_cast<int>(cells_.size()) - 1;
}

int64_t ExecutionContext::cell_read(int cell_id) const {
  if (cell_id < 0 || static_cast<size_t>(cell_id) >= cells_.size())
    throw ConfigError("cell not registered with this proof");
  return cells_[static_cast<size_t>(cell_id)];
}

void ExecutionContext::cell_write(int cell_id, int64_t value) {
  if (cell_id < 0 || static_cast<size_t>(cell_id) >= cells_.size())
    throw ConfigError("cell not registered with this proof");
  cells_[static_cast<size_t>(cell_id)] = value;
}

} // namespace vproof
