#include "vproof/memory.hpp"

#include "vproof/choice.hpp"

namespace vproof {

BufferRef MemoryStore::allocate(uint64_t size) {
  TrackedBuffer buf;
  buf.size = size;
  buf.state.assign(size, ByteState::Uninit);
  buf.data.assign(size, 0);
  BufferRef ref{static_cast<uint32_t>(buffers_.size())};
  buffers_.push_back(std::move(buf));
  ++live_;
  return ref;
}

TrackedBuffer& MemoryStore::at(BufferRef ref) {
  if (!known(ref))
    throw ConfigError("buffer reference does not belong to this context");
  return buffers_[ref.id];
}

const TrackedBuffer& MemoryStore::at(BufferRef ref) const {
  if (!known(ref))
    throw ConfigError("buffer reference does not belong to this context");
  return buffers_[ref.id];
}

bool MemoryStore::lookup_havoc(uint32_t id, uint8_t& out) const {
  auto it = havoc_values_.find(id);
  if (it == havoc_values_.end())
    return false;
  out = it->second;
  return true;
}

void MemoryStore::remember_havoc(uint32_t id, uint8_t value) {
  havoc_values_[id] = value;
}

} // namespace vproof
