#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vproof {

/// Thrown on API misuse: invalid domains, malformed expectations, duplicate
/// registrations. Distinct from path verdicts, which are data, never thrown.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class ByteProfileKind { Small, Full, Sample };

/// How havoc'd bytes (and byte-typed choices) enumerate: the small profile
/// {0, 1, 255}, the full 0..255 range, or k values sampled deterministically
/// from the run seed.
struct ByteProfile {
  ByteProfileKind kind = ByteProfileKind::Small;
  int sample_k = 8;

  static ByteProfile small() { return {ByteProfileKind::Small, 0}; }
  static ByteProfile full() { return {ByteProfileKind::Full, 0}; }
  static ByteProfile sample(int k);
  static ByteProfile parse(std::string_view text);

  std::string to_string() const;
  bool operator==(const ByteProfile&) const = default;
};

/// Resolves a profile to its concrete value set. Sampled sets are a pure
/// function of (profile, seed) and sorted ascending.
std::vector<int64_t> resolve_byte_profile(const ByteProfile& profile,
                                          uint64_t seed);

/// A finite set of scalar values a single nondeterministic choice ranges
/// over. Every choice in a proof must name one; unbounded domains are
/// rejected at construction so exploration always terminates.
class ChoiceDomain {
public:
  enum class Kind { ExplicitSet, IntegerRange, Bytes };

  /// Default-constructed domains are byte domains under the config profile.
  ChoiceDomain() : kind_(Kind::Bytes) {}

  /// Largest admitted cardinality for an integer range. Ranges such as
  /// 0..2^32 are configuration errors, not enumeration requests.
  static constexpr uint64_t kMaxCardinality = 65536;

  static ChoiceDomain of(std::vector<int64_t> values);
  static ChoiceDomain of(std::initializer_list<int64_t> values);
  static ChoiceDomain range(int64_t lo, int64_t hi);
  /// Byte domain following the exploration config's profile.
  static ChoiceDomain bytes();
  /// Byte domain with an explicit profile.
  static ChoiceDomain bytes(ByteProfile profile);

  Kind kind() const { return kind_; }
  bool is_bytes() const { return kind_ == Kind::Bytes; }
  bool has_own_profile() const { return own_profile_; }
  const ByteProfile& profile() const { return profile_; }

  /// Cardinality. Byte domains must be resolved first.
  uint32_t size() const;
  /// Value at enumeration position i (declaration order for explicit sets,
  /// ascending for ranges and resolved byte sets).
  int64_t at(uint32_t i) const;

  bool contains(int64_t v) const;

private:
  Kind kind_ = Kind::ExplicitSet;
  std::vector<int64_t> values_;
  int64_t lo_ = 0;
  int64_t hi_ = -1;
  ByteProfile profile_{};
  bool own_profile_ = false;
};

} // namespace vproof
