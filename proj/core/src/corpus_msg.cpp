#include "vproof/corpus.hpp"
#include "vproof/mock.hpp"

#include <array>
#include <optional>

namespace vproof::corpus {
namespace {

constexpr int kError = -1;

ChoiceDomain msg_len_domain() {
  return ChoiceDomain::of({0, 1, static_cast<int64_t>(kMaxMsgSize)});
}

ChoiceDomain err_domain() { return ChoiceDomain::of({-1, 0}); }

struct HandlerOptions {
  bool consistency_check = true;
  bool fault_modify_msg = false;
  uint64_t consume_cap = 4;
};

// Application-side callback installed by the unit proof. Checks that the
// message was not altered between the environment handing it over and the
// application seeing it, that every consumed byte was actually produced,
// and then reads a bounded prefix the way a header parse would.
int test_msg_handler(ExecutionContext& ctx, BufferRef msg, uint64_t msg_size,
                     const HandlerOptions& opts) {
  if (opts.fault_modify_msg)
    ctx.mem_write_byte(msg, 0, 0x42);
  sassert(ctx, !is_modified(ctx, msg), "msg-unmodified");
  if (opts.consistency_check)
    sassert(ctx, ctx.is_init_region(msg, 0, msg_size), "msg-bytes-initialized");
  (void)mem_read(ctx, msg, 0, std::min<uint64_t>(msg_size, opts.consume_cap));
  return static_cast<int>(nd_value(ctx, err_domain(), "handler.rc"));
}

// The function under verification. One body, instantiated against every
// environment style.
template <typename Env, typename Handler>
int do_handle_msg(ExecutionContext& ctx, Env& env, Handler&& handler,
                  int chan) {
  BufferRef msg = alloc(ctx, kMaxMsgSize);
  uint64_t msg_len = 0;
  int rc = env.get_msg(ctx, chan, &msg_len);
  if (rc < 0) {
    free(ctx, msg);
    return kError;
  }
  rc = env.read_msg(ctx, chan, msg);
  env.put_msg(ctx, chan);
  if (rc < 0) {
    free(ctx, msg);
    return kError;
  }
  if (static_cast<uint64_t>(rc) < msg_len) {
    free(ctx, msg);
    return kError;
  }
  rc = handler(ctx, msg, msg_len);
  free(ctx, msg);
  return rc;
}

// Mutated dispatch: fetches the message body before its length. Exists only
// to demonstrate ordering violations.
template <typename Env>
int do_handle_msg_read_first(ExecutionContext& ctx, Env& env, int chan) {
  BufferRef msg = alloc(ctx, kMaxMsgSize);
  int rc = env.read_msg(ctx, chan, msg);
  uint64_t msg_len = 0;
  (void)env.get_msg(ctx, chan, &msg_len);
  (void)rc;
  free(ctx, msg);
  return 0;
}

// Mutated dispatch: never retires the message.
template <typename Env, typename Handler>
int do_handle_msg_no_put(ExecutionContext& ctx, Env& env, Handler&& handler,
                         int chan) {
  BufferRef msg = alloc(ctx, kMaxMsgSize);
  uint64_t msg_len = 0;
  int rc = env.get_msg(ctx, chan, &msg_len);
  if (rc < 0) {
    free(ctx, msg);
    return kError;
  }
  rc = env.read_msg(ctx, chan, msg);
  if (rc < 0) {
    free(ctx, msg);
    return kError;
  }
  if (static_cast<uint64_t>(rc) < msg_len) {
    free(ctx, msg);
    return kError;
  }
  rc = handler(ctx, msg, msg_len);
  free(ctx, msg);
  return rc;
}

// Operational replica of the channel layer: a message queue indexed by
// channel, complete enough to run any client.
class FakeMsgEnv {
public:
  static constexpr int kMaxChannels = 10;

  explicit FakeMsgEnv(ExecutionContext& ctx)
      : create_probe_(ctx, "create_channel"), wait_probe_(ctx, "wait_for_msg"),
        get_probe_(ctx, "get_msg"), read_probe_(ctx, "read_msg"),
        put_probe_(ctx, "put_msg") {}

  int create_channel(ExecutionContext& ctx) {
    create_probe_.hit(ctx);
    sassert(ctx, next_available_ < kMaxChannels, "fake:channel-capacity");
    auto len = static_cast<uint64_t>(
        nd_value(ctx, msg_len_domain(), "create_channel.len"));
    BufferRef buf = alloc(ctx, len);
    memhavoc(ctx, buf);
    int chan = next_available_++;
    slots_[chan] = Slot{buf, len, true};
    return chan;
  }

  int wait_for_msg(ExecutionContext& ctx) {
    wait_probe_.hit(ctx);
    int chan = static_cast<int>(
        nd_value(ctx, ChoiceDomain::of({0, 1, 2}), "wait_for_msg.chan"));
    assume(ctx, chan > already_processed_ && chan < next_available_);
    return chan;
  }

  int get_msg(ExecutionContext& ctx, int chan, uint64_t* len) {
    get_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    int err = static_cast<int>(nd_value(ctx, err_domain(), "get_msg.err"));
    if (err < 0)
      return err;
    sassert(ctx, chan > 0 && chan < kMaxChannels && len != nullptr,
            "fake:get_msg-pre");
    *len = slots_[chan].len;
    return 0;
  }

  int read_msg(ExecutionContext& ctx, int chan, BufferRef msg) {
    read_probe_.hit(ctx, "(" + std::to_string(chan) + ", buf#" +
                             std::to_string(msg.id) + ")");
    sassert(ctx, chan > 0 && chan < next_available_ && msg.valid(),
            "fake:read_msg-pre");
    ctx.mem_copy(msg, 0, slots_[chan].buf, 0, slots_[chan].len);
    reset_modified(ctx, msg);
    return static_cast<int>(slots_[chan].len);
  }

  int put_msg(ExecutionContext& ctx, int chan) {
    put_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    sassert(ctx, chan > 0 && chan < next_available_, "fake:put_msg-pre");
    int err = static_cast<int>(nd_value(ctx, err_domain(), "put_msg.err"));
    if (err < 0)
      return err;
    free(ctx, slots_[chan].buf);
    slots_[chan].live = false;
    ++already_processed_;
    return 0;
  }

  void finish(ExecutionContext& ctx) {
    for (int i = 0; i < next_available_; ++i) {
      if (slots_[i].live) {
        free(ctx, slots_[i].buf);
        slots_[i].live = false;
      }
    }
  }

private:
  struct Slot {
    BufferRef buf;
    uint64_t len = 0;
    bool live = false;
  };

  int next_available_ = 0;
  int already_processed_ = 0;
  std::array<Slot, kMaxChannels> slots_{};
  CallProbe create_probe_, wait_probe_, get_probe_, read_probe_, put_probe_;
};

// Stateless declarative model: each function constrains its inputs and
// produces fresh nondeterministic outputs, with no state linking get_msg's
// reported length to what read_msg actually copies. That gap is the point:
// the dispatch proof fails against this environment.
class SummaryMsgEnv {
public:
  explicit SummaryMsgEnv(ExecutionContext& ctx)
      : create_probe_(ctx, "create_channel"), wait_probe_(ctx, "wait_for_msg"),
        get_probe_(ctx, "get_msg"), read_probe_(ctx, "read_msg"),
        put_probe_(ctx, "put_msg") {}

  int create_channel(ExecutionContext& ctx) {
    create_probe_.hit(ctx);
    return 0;
  }

  int wait_for_msg(ExecutionContext& ctx) {
    wait_probe_.hit(ctx);
    return 1;
  }

  int get_msg(ExecutionContext& ctx, int chan, uint64_t* len) {
    get_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    sassert(ctx, chan > 0 && len != nullptr, "summary:get_msg-pre");
    *len = static_cast<uint64_t>(nd_value(ctx, msg_len_domain(), "get_msg.len"));
    return static_cast<int>(nd_value(ctx, err_domain(), "get_msg.err"));
  }

  int read_msg(ExecutionContext& ctx, int chan, BufferRef msg) {
    read_probe_.hit(ctx, "(" + std::to_string(chan) + ", buf#" +
                             std::to_string(msg.id) + ")");
    sassert(ctx, chan > 0 && msg.valid(), "summary:read_msg-pre");
    BufferRef blob = alloc(ctx, kMaxMsgSize);
    memhavoc(ctx, blob);
    auto len =
        static_cast<uint64_t>(nd_value(ctx, msg_len_domain(), "read_msg.len"));
    ctx.mem_copy(msg, 0, blob, 0, len);
    free(ctx, blob);
    reset_modified(ctx, msg);
    // Declares how many bytes are available rather than reporting the copy.
    return static_cast<int>(nd_value(
        ctx,
        ChoiceDomain::of({-1, 0, static_cast<int64_t>(kMaxMsgSize)}),
        "read_msg.rc"));
  }

  int put_msg(ExecutionContext& ctx, int chan) {
    put_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    sassert(ctx, chan > 0, "summary:put_msg-pre");
    return static_cast<int>(nd_value(ctx, err_domain(), "put_msg.err"));
  }

  void finish(ExecutionContext&) {}

private:
  CallProbe create_probe_, wait_probe_, get_probe_, read_probe_, put_probe_;
};

// Hand-written behavioral environment: minimal state (the message size)
// carried from get_msg to read_msg, everything else nondeterministic.
class HandMockMsgEnv {
public:
  explicit HandMockMsgEnv(ExecutionContext& ctx)
      : create_probe_(ctx, "create_channel"), wait_probe_(ctx, "wait_for_msg"),
        get_probe_(ctx, "get_msg"), read_probe_(ctx, "read_msg"),
        put_probe_(ctx, "put_msg") {}

  int create_channel(ExecutionContext& ctx) {
    create_probe_.hit(ctx);
    return 0;
  }

  int wait_for_msg(ExecutionContext& ctx) {
    wait_probe_.hit(ctx);
    return 1;
  }

  int get_msg(ExecutionContext& ctx, int chan, uint64_t* len) {
    get_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    sassert(ctx, chan > 0 && len != nullptr, "mock:get_msg-pre");
    *len = static_cast<uint64_t>(nd_value(ctx, msg_len_domain(), "get_msg.len"));
    msg_size_ = *len;
    return static_cast<int>(nd_value(ctx, err_domain(), "get_msg.ret"));
  }

  int read_msg(ExecutionContext& ctx, int chan, BufferRef msg) {
    read_probe_.hit(ctx, "(" + std::to_string(chan) + ", buf#" +
                             std::to_string(msg.id) + ")");
    sassert(ctx, chan > 0 && msg.valid(), "mock:read_msg-pre");
    BufferRef blob = alloc(ctx, msg_size_);
    memhavoc(ctx, blob);
    ctx.mem_copy(msg, 0, blob, 0, msg_size_);
    free(ctx, blob);
    reset_modified(ctx, msg);
    return static_cast<int>(msg_size_);
  }

  int put_msg(ExecutionContext& ctx, int chan) {
    put_probe_.hit(ctx, "(" + std::to_string(chan) + ")");
    sassert(ctx, chan > 0, "mock:put_msg-pre");
    return static_cast<int>(nd_value(ctx, err_domain(), "put_msg.ret"));
  }

  void finish(ExecutionContext&) {}

private:
  uint64_t msg_size_ = 0;
  CallProbe create_probe_, wait_probe_, get_probe_, read_probe_, put_probe_;
};

// The same behavioral environment assembled from expectation records: the
// message size lives in a proof-scoped cell written by get_msg's capture
// and recalled by read_msg's return action; read_msg is constrained to run
// after get_msg; put_msg is lazy.
class DslMockMsgEnv {
public:
  explicit DslMockMsgEnv(ExecutionContext& ctx)
      : msg_size_(ctx, "msg_size", 0), create_probe_(ctx, "create_channel"),
        wait_probe_(ctx, "wait_for_msg") {
    EnvCell cell = msg_size_;
    auto set_out_len = [cell](ExecutionContext& c, uint64_t* len) {
      *len = static_cast<uint64_t>(nd_value(c, msg_len_domain(), "get_msg.len"));
      cell.write(c, static_cast<int64_t>(*len));
    };
    get_msg_.emplace(make_mock<int(int, uint64_t*)>(
        ctx, "get_msg",
        ExpectationBuilder()
            .times(Cardinality::eq(1))
            .returnFn([](ExecutionContext& c) {
              return static_cast<int>(nd_value(c, err_domain(), "get_msg.ret"));
            })
            .captureArgAndInvoke(1, set_out_len)
            .build()));

    auto fill_msg = [cell](ExecutionContext& c, BufferRef msg) {
      auto size = static_cast<uint64_t>(cell.read(c));
      BufferRef blob = c.alloc(size);
      c.memhavoc(blob);
      sassert(c, msg.valid(), "mock:read_msg-pre");
      c.mem_copy(msg, 0, blob, 0, size);
      c.free_buffer(blob);
      c.reset_modified(msg);
    };
    read_msg_.emplace(make_ordered_mock<int(int, BufferRef)>(
        ctx, "read_msg",
        ExpectationBuilder()
            .times(Cardinality::lt(2))
            .returnFn(wrap_cell(msg_size_))
            .captureArgAndInvoke(1, fill_msg)
            .build(),
        {get_msg_->ref()}));

    put_msg_.emplace(
        lazy_mock<int(int)>(ctx, "put_msg", ChoiceDomain::of({-1, 0})));

    setup_post_checks(ctx,
                      {get_msg_->ref(), read_msg_->ref(), put_msg_->ref()});
  }

  int create_channel(ExecutionContext& ctx) {
    create_probe_.hit(ctx);
    return 0;
  }

  int wait_for_msg(ExecutionContext& ctx) {
    wait_probe_.hit(ctx);
    return 1;
  }

  int get_msg(ExecutionContext& ctx, int chan, uint64_t* len) {
    return (*get_msg_)(ctx, chan, len);
  }

  int read_msg(ExecutionContext& ctx, int chan, BufferRef msg) {
    return (*read_msg_)(ctx, chan, msg);
  }

  int put_msg(ExecutionContext& ctx, int chan) { return (*put_msg_)(ctx, chan); }

  void finish(ExecutionContext&) {}

private:
  EnvCell msg_size_;
  CallProbe create_probe_, wait_probe_;
  std::optional<Mock<int(int, uint64_t*)>> get_msg_;
  std::optional<Mock<int(int, BufferRef)>> read_msg_;
  std::optional<Mock<int(int)>> put_msg_;
};

template <typename Env>
void run_msg_unit_proof(ExecutionContext& ctx, Env& env,
                        const MsgProofOptions& options) {
  for (int i = 0; i < options.channels; ++i)
    (void)env.create_channel(ctx);
  int chan = env.wait_for_msg(ctx);

  HandlerOptions handler_options;
  handler_options.consistency_check = options.consistency_check;
  handler_options.fault_modify_msg = options.fault_modify_msg;
  auto handler = [&handler_options](ExecutionContext& c, BufferRef msg,
                                    uint64_t size) {
    return test_msg_handler(c, msg, size, handler_options);
  };

  if (options.fault_read_before_get)
    (void)do_handle_msg_read_first(ctx, env, chan);
  else if (options.fault_drop_put)
    (void)do_handle_msg_no_put(ctx, env, handler, chan);
  else
    (void)do_handle_msg(ctx, env, handler, chan);
  env.finish(ctx);
}

} // namespace

ProofBody make_msg_proof(const MsgProofOptions& options) {
  return [options](ExecutionContext& ctx) {
    switch (options.style) {
    case MsgEnvStyle::Fake: {
      FakeMsgEnv env(ctx);
      run_msg_unit_proof(ctx, env, options);
      break;
    }
    case MsgEnvStyle::Summary: {
      SummaryMsgEnv env(ctx);
      run_msg_unit_proof(ctx, env, options);
      break;
    }
    case MsgEnvStyle::MockHand: {
      HandMockMsgEnv env(ctx);
      run_msg_unit_proof(ctx, env, options);
      break;
    }
    case MsgEnvStyle::MockDsl: {
      DslMockMsgEnv env(ctx);
      run_msg_unit_proof(ctx, env, options);
      break;
    }
    }
  };
}

} // namespace vproof::corpus
