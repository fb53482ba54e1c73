#include "vproof/corpus.hpp"
#include "vproof/mock.hpp"

namespace vproof::corpus {
namespace {

// Loops on the receive callback until enough bytes arrived or it reports an
// error.
template <typename RecvMock>
int fetch_input(ExecutionContext& ctx, RecvMock& recv, BufferRef buf,
                uint64_t want) {
  uint64_t got = 0;
  while (got < want) {
    int rc = recv(ctx, 1, buf, want);
    if (rc <= 0)
      return -1;
    got += static_cast<uint64_t>(rc);
  }
  return 0;
}

} // namespace

ProofBody make_ssl_fetch_proof(const SslFetchOptions& options) {
  return [options](ExecutionContext& ctx) {
    // The harness pins the minimum byte count before the call; the mock's
    // action recalls it through the cell.
    EnvCell min_recv(ctx, "min_recv_bytes", 0);
    min_recv.write(ctx, static_cast<int64_t>(options.want));

    ChoiceDomain results = ChoiceDomain::of(options.recv_results);
    auto recv_action = [min_recv, results](ExecutionContext& c, int /*conn*/,
                                           BufferRef buf, uint64_t len) -> int {
      sassert(c, c.is_deref(buf, len), "recv-buffer-deref");
      int64_t ret = nd_value(c, results, "ssl_recv.ret");
      assume(c, ret <= 0 || ret >= min_recv.read(c));
      return static_cast<int>(ret);
    };
    auto recv = make_mock<int(int, BufferRef, uint64_t)>(
        ctx, "ssl_recv",
        ExpectationBuilder()
            .times(Cardinality::lt(2))
            .invokeFn(recv_action)
            .build());
    setup_post_checks(ctx, {recv.ref()});

    BufferRef buf = alloc(ctx, options.buf_size);
    int rc = fetch_input(ctx, recv, buf, options.want);
    sassert(ctx, rc == 0 || rc == -1, "fetch-result");
    free(ctx, buf);
  };
}

} // namespace vproof::corpus
