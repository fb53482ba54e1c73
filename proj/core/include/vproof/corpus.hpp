#pragma once

#include "vproof/engine.hpp"
#include "vproof/registry.hpp"

#include <vector>

namespace vproof::corpus {

/// Allocation size of the message buffer in the message-handling proofs.
/// Buffers are cheap; only choices are expensive, so this stays full-size
/// while choice domains are scaled down.
inline constexpr uint64_t kMaxMsgSize = 4096;

/// Environment styles for the message-dispatch proof. The function under
/// verification is byte-for-byte the same in all four; only the environment
/// differs.
enum class MsgEnvStyle { Fake, Summary, MockHand, MockDsl };

struct MsgProofOptions {
  MsgEnvStyle style = MsgEnvStyle::Fake;
  /// Channels the harness creates before dispatch (fake environment only).
  int channels = 2;
  /// Handler asserts that every byte it consumes was actually produced.
  bool consistency_check = true;
  /// Fault injection: the handler writes into the message before its
  /// not-modified check.
  bool fault_modify_msg = false;
  /// Fault injection: mutated dispatch calls read_msg before get_msg.
  bool fault_read_before_get = false;
  /// Fault injection: mutated dispatch never retires the message.
  bool fault_drop_put = false;
};

ProofBody make_msg_proof(const MsgProofOptions& options);

struct WaterOptions {
  ChoiceDomain qty = ChoiceDomain::range(0, 10);
  ChoiceDomain pour = ChoiceDomain::of({0, 1, 2});
};

ProofBody make_water_proof(const WaterOptions& options = {});

struct SslFetchOptions {
  uint64_t buf_size = 16;
  uint64_t want = 4;
  /// Result domain of the receive callback; values between 0 (exclusive)
  /// and the harness minimum are assumed away inside the mock.
  std::vector<int64_t> recv_results = {-1, 0, 2, 4, 8};
};

ProofBody make_ssl_fetch_proof(const SslFetchOptions& options = {});

/// Registers the shipped proofs: one intentional failure
/// (do_handle_msg_summary), the rest passing.
void register_corpus(ProofRegistry& registry);

} // namespace vproof::corpus
