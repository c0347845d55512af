#pragma once

// The prefix-chain set A coding a sequence a, the fibre map eta on A, the
// encoder f_a and the finite-alphabet first-hit encoder.

#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/integer.hpp>

#include "baire/core.hpp"

namespace baire {

inline Nat cantorPair(const Nat& u, const Nat& v) {
  Nat s = u + v;
  return s * (s + 1) / 2 + v;
}

inline std::pair<Nat, Nat> cantorUnpair(const Nat& z) {
  Nat w = (boost::multiprecision::sqrt(Nat(8 * z + 1)) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat v = z - t;
  return {w - v, v};
}

inline constexpr unsigned kRootCode = 2;

/// code(<>) = 2, code(t^n) = pair(code(t), n) + 3.
inline Nat prefixCode(const Node& t) {
  Nat c = kRootCode;
  for (const auto& n : t) c = cantorPair(c, n) + 3;
  return c;
}

/// Inverse of prefixCode; nullopt for numbers that code no node.
inline std::optional<Node> decodePrefixCode(Nat c) {
  Node rev;
  while (c != kRootCode) {
    if (c < 6) return std::nullopt;
    auto [u, v] = cantorUnpair(c - 3);
    if (u >= c) return std::nullopt;
    rev.push_back(v);
    c = u;
  }
  return Node(rev.rbegin(), rev.rend());
}

/// s = 0, 0,1, 0,1,2, 0,1,2,3, ... : every value occurs infinitely often.
inline Nat diagonalValue(const Nat& k) {
  Nat j = (boost::multiprecision::sqrt(Nat(8 * k + 1)) - 1) / 2;
  return k - j * (j + 1) / 2;
}

/// The set A = { code(a|l) : l >= 1 }. Members are generated on demand by
/// walking the strictly increasing chain; nothing is cached, so the object
/// is immutable and freely shareable.
class ASet {
 public:
  explicit ASet(EventuallyPeriodicSeq a, std::size_t maxBits = std::size_t{1} << 20)
      : a_(std::move(a)), maxBits_(maxBits) {}

  const EventuallyPeriodicSeq& source() const noexcept { return a_; }

  /// e_1 < e_2 < ... < e_count.
  std::vector<Nat> chain(std::size_t count) const {
    std::vector<Nat> out;
    Nat c = kRootCode;
    for (std::size_t l = 0; l < count; ++l) {
      c = step(c, l);
      out.push_back(c);
    }
    return out;
  }

  /// Level l >= 1 with n = e_l, if n is in A.
  std::optional<std::size_t> levelOf(const Nat& n) const {
    Nat c = kRootCode;
    for (std::size_t l = 0;; ++l) {
      c = step(c, l);
      if (c == n) return l + 1;
      if (c > n) return std::nullopt;
    }
  }

  bool contains(const Nat& n) const { return n >= 6 && levelOf(n).has_value(); }

  /// eta(e_l) = s(l - 1).
  Nat eta(const Nat& e) const {
    auto l = levelOf(e);
    if (!l) throw DomainError("NotInA", e.str() + " is not in A");
    return diagonalValue(*l - 1);
  }

  /// Least e in A with eta(e) = m and e >= floor.
  Nat leastWithEta(const Nat& m, const Nat& floor) const {
    Nat c = kRootCode;
    for (std::size_t l = 0;; ++l) {
      c = step(c, l);
      if (c >= floor && diagonalValue(l) == m) return c;
    }
  }

 private:
  Nat step(const Nat& c, std::size_t l) const {
    if (boost::multiprecision::msb(c) > maxBits_ / 2)
      throw DomainError("BoundExceeded", "chain code at level " + std::to_string(l + 1) +
                                             " exceeds " + std::to_string(maxBits_) + " bits");
    return cantorPair(c, a_.at(l)) + 3;
  }

  EventuallyPeriodicSeq a_;
  std::size_t maxBits_;
};

inline bool memberA(const ASet& A, const Nat& n) { return A.contains(n); }
inline Nat etaValue(const ASet& A, const Nat& e) { return A.eta(e); }

/// f_a(x)(n): eta of the (n+1)-th entry of x lying in A; 0 when x has at
/// most n such entries.
inline Nat encodeF(const ASet& A, const EventuallyPeriodicSeq& x, std::size_t n) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < x.prefix().size(); ++i)
    if (A.contains(x.prefix()[i]) && seen++ == n) return A.eta(x.prefix()[i]);
  std::vector<std::size_t> hitsInPeriod;
  for (std::size_t i = 0; i < x.period().size(); ++i)
    if (A.contains(x.period()[i])) hitsInPeriod.push_back(i);
  if (hitsInPeriod.empty()) return 0;
  std::size_t k = (n - seen) % hitsInPeriod.size();
  return A.eta(x.period()[hitsInPeriod[k]]);
}

inline Nat encodeF(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& x, std::size_t n) {
  return encodeF(ASet(a), x, n);
}

/// Position of the (n+1)-th A-entry of x, if any.
inline std::optional<std::size_t> nthHitPosition(const ASet& A, const EventuallyPeriodicSeq& x, std::size_t n) {
  std::size_t seen = 0;
  std::size_t limit = x.prefix().size() + x.period().size() * (n + 1);
  for (std::size_t i = 0; i < limit; ++i)
    if (A.contains(x.at(i)) && seen++ == n) return i;
  return std::nullopt;
}

/// (first index hitting the subset) + 1, or 0 if x never hits it.
inline Nat horizEncode(const std::set<Nat>& subset, const EventuallyPeriodicSeq& x) {
  std::size_t end = x.prefix().size() + x.period().size();
  for (std::size_t i = 0; i < end; ++i)
    if (subset.count(x.at(i))) return Nat(i + 1);
  return 0;
}

}  // namespace baire
