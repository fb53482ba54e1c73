#pragma once

#include <cstdint>
#include <string>

namespace vproof {

/// Call-count predicate evaluated against a mock's per-path call counter at
/// the end of every complete path. Any accepts every count and is the
/// default when no expectation is given.
class Cardinality {
public:
  enum class Kind { Any, Eq, Lt, Gt, Leq, Geq };

  Cardinality() = default;

  static Cardinality any() { return {}; }
  static Cardinality eq(uint64_t n) { return {Kind::Eq, n}; }
  static Cardinality lt(uint64_t n) { return {Kind::Lt, n}; }
  static Cardinality gt(uint64_t n) { return {Kind::Gt, n}; }
  static Cardinality leq(uint64_t n) { return {Kind::Leq, n}; }
  static Cardinality geq(uint64_t n) { return {Kind::Geq, n}; }

  Kind kind() const { return kind_; }
  uint64_t bound() const { return n_; }

  bool eval(uint64_t count) const {
    switch (kind_) {
    case Kind::Any:
      return true;
    case Kind::Eq:
      return count == n_;
    case Kind::Lt:
      return count < n_;
    case Kind::Gt:
      return count > n_;
    case Kind::Leq:
      return count <= n_;
    case Kind::Geq:
      return count >= n_;
    }
    return true;
  }

  std::string describe() const {
    switch (kind_) {
    case Kind::Any:
      return "Any";
    case Kind::Eq:
      return "Eq(" + std::to_string(n_) + ")";
    case Kind::Lt:
      return "Lt(" + std::to_string(n_) + ")";
    case Kind::Gt:
      return "Gt(" + std::to_string(n_) + ")";
    case Kind::Leq:
      return "Leq(" + std::to_string(n_) + ")";
    case Kind::Geq:
      return "Geq(" + std::to_string(n_) + ")";
    }
    return "Any";
  }

  bool operator==(const Cardinality&) const = default;

private:
  Cardinality(Kind kind, uint64_t n) : kind_(kind), n_(n) {}

  Kind kind_ = Kind::Any;
  uint64_t n_ = 0;
};

} // namespace vproof
