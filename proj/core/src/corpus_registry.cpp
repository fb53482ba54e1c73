#include "vproof/corpus.hpp"

namespace vproof::corpus {

void register_corpus(ProofRegistry& registry) {
  {
    ProofEntry entry;
    entry.name = "water";
    entry.description =
        "looping pour until the requested quantity is reached; "
        "post-condition: poured >= requested";
    entry.body = make_water_proof();
    entry.defaults.max_depth = 12; // one quantity choice plus up to 11 pours
    entry.defaults.max_paths = 1000000;
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "do_handle_msg_fake";
    entry.description =
        "message dispatch against an operational fake channel layer";
    MsgProofOptions options;
    options.style = MsgEnvStyle::Fake;
    entry.body = make_msg_proof(options);
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "do_handle_msg_summary";
    entry.description =
        "message dispatch against stateless function summaries; intentional "
        "failure: the summary does not tie the reported length to the copy";
    MsgProofOptions options;
    options.style = MsgEnvStyle::Summary;
    entry.body = make_msg_proof(options);
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "do_handle_msg_summary_weak";
    entry.description =
        "the summary environment again, with the consistency assertion and "
        "strict uninitialized-read checking off; passes because nothing "
        "observes the gap";
    MsgProofOptions options;
    options.style = MsgEnvStyle::Summary;
    options.consistency_check = false;
    entry.body = make_msg_proof(options);
    entry.defaults.strict_uninit = false;
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "do_handle_msg_mock";
    entry.description =
        "message dispatch against a hand-written behavioral environment "
        "carrying only the message size";
    MsgProofOptions options;
    options.style = MsgEnvStyle::MockHand;
    entry.body = make_msg_proof(options);
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "do_handle_msg_mock_dsl";
    entry.description =
        "the same behavioral environment assembled from expectation records "
        "(capture, cell-backed return, ordering, lazy mock, post-checks)";
    MsgProofOptions options;
    options.style = MsgEnvStyle::MockDsl;
    entry.body = make_msg_proof(options);
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "ssl_recv_fetch";
    entry.description =
        "fetch-input loop over a receive mock whose action bounds-checks the "
        "buffer and honors a harness-set minimum byte count";
    entry.body = make_ssl_fetch_proof();
    registry.add(std::move(entry));
  }
  {
    ProofEntry entry;
    entry.name = "ssl_recv_fetch_err";
    entry.description =
        "the receive mock constrained to error results; exercises the "
        "caller's early-exit path";
    SslFetchOptions options;
    options.recv_results = {-1};
    entry.body = make_ssl_fetch_proof(options);
    registry.add(std::move(entry));
  }
}

} // namespace vproof::corpus
