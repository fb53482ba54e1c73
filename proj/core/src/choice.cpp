#include "vproof/choice.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_set>

namespace vproof {

ByteProfile ByteProfile::sample(int k) {
  if (k < 1 || k > 256)
    throw ConfigError("byte profile sample count must be in 1..256");
  return {ByteProfileKind::Sample, k};
}

ByteProfile ByteProfile::parse(std::string_view text) {
  if (text == "small")
    return small();
  if (text == "full")
    return full();
  if (text.rfind("sample:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(std::string(text.substr(7)));
    } catch (const std::exception&) {
      throw ConfigError("invalid byte profile: " + std::string(text));
    }
    return sample(k);
  }
  throw ConfigError("invalid byte profile: " + std::string(text) +
                    " (expected small|full|sample:K)");
}

std::string ByteProfile::to_string() const {
  switch (kind) {
  case ByteProfileKind::Small:
    return "small";
  case ByteProfileKind::Full:
    return "full";
  case ByteProfileKind::Sample:
    return "sample:" + std::to_string(sample_k);
  }
  return "small";
}

std::vector<int64_t> resolve_byte_profile(const ByteProfile& profile,
                                          uint64_t seed) {
  switch (profile.kind) {
  case ByteProfileKind::Small:
    return {0, 1, 255};
  case ByteProfileKind::Full: {
    std::vector<int64_t> out(256);
    for (int i = 0; i < 256; ++i)
      out[i] = i;
    return out;
  }
  case ByteProfileKind::Sample: {
    // Partial Fisher-Yates over 0..255. Avoids std::uniform_int_distribution,
    // whose output is not portable across standard libraries.
    std::array<int, 256> pool{};
    for (int i = 0; i < 256; ++i)
      pool[i] = i;
    std::mt19937_64 eng(seed ^ 0x62797465u); // domain-tagged seed
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(profile.sample_k));
    for (int i = 0; i < profile.sample_k; ++i) {
      auto j = i + static_cast<int>(eng() % static_cast<uint64_t>(256 - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  }
  return {};
}

ChoiceDomain ChoiceDomain::of(std::vector<int64_t> values) {
  if (values.empty())
    throw ConfigError("explicit choice domain must be non-empty");
  std::unordered_set<int64_t> seen;
  for (int64_t v : values)
    if (!seen.insert(v).second)
      throw ConfigError("explicit choice domain has duplicate value " +
                        std::to_string(v));
  ChoiceDomain d;
  d.kind_ = Kind::ExplicitSet;
  d.values_ = std::move(values);
  return d;
}

ChoiceDomain ChoiceDomain::of(std::initializer_list<int64_t> values) {
  return of(std::vector<int64_t>(values));
}

ChoiceDomain ChoiceDomain::range(int64_t lo, int64_t hi) {
  if (lo > hi)
    throw ConfigError("integer range domain requires lo <= hi");
  // Guard the subtraction before sizing; hi - lo may overflow for extremes.
  long double width = static_cast<long double>(hi) - static_cast<long double>(lo);
  if (width + 1.0L > static_cast<long double>(kMaxCardinality))
    throw ConfigError("integer range domain too large to enumerate (max " +
                      std::to_string(kMaxCardinality) + " values)");
  ChoiceDomain d;
  d.kind_ = Kind::IntegerRange;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

ChoiceDomain ChoiceDomain::bytes() {
  ChoiceDomain d;
  d.kind_ = Kind::Bytes;
  d.own_profile_ = false;
  return d;
}

ChoiceDomain ChoiceDomain::bytes(ByteProfile profile) {
  ChoiceDomain d;
  d.kind_ = Kind::Bytes;
  d.profile_ = profile;
  d.own_profile_ = true;
  return d;
}

uint32_t ChoiceDomain::size() const {
  switch (kind_) {
  case Kind::ExplicitSet:
    return static_cast<uint32_t>(values_.size());
  case Kind::IntegerRange:
    return static_cast<uint32_t>(hi_ - lo_ + 1);
  case Kind::Bytes:
    throw ConfigError("byte domain must be resolved against a config before use");
  }
  return 0;
}

int64_t ChoiceDomain::at(uint32_t i) const {
  switch (kind_) {
  case Kind::ExplicitSet:
    return values_.at(i);
  case Kind::IntegerRange:
    return lo_ + static_cast<int64_t>(i);
  case Kind::Bytes:
    throw ConfigError("byte domain must be resolved against a config before use");
  }
  return 0;
}

bool ChoiceDomain::contains(int64_t v) const {
  switch (kind_) {
  case Kind::ExplicitSet:
    return std::find(values_.begin(), values_.end(), v) != values_.end();
  case Kind::IntegerRange:
    return v >= lo_ && v <= hi_;
  case Kind::Bytes:
    throw ConfigError("byte domain must be resolved against a config before use");
  }
  return false;
}

} // namespace vproof
