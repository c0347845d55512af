#pragma once

// Brute-force minimax for a truncated game G(j, m): I appends up to three
// entries (optionally raising the floor to kLock), II appends one entry
// outside A (optionally raising the floor), I appends up to one more entry,
// and the rest of the play alternates one entry each forever: II wins when
// for every w of I some v of II gives j(stem (w v)^omega) = m.
//
// Values come from a fixed pool: 0..3 are told apart individually, larger
// values only by their residue mod 6. II gets two witnesses per residue
// since one may lie in A; I, who never has to avoid A, gets one. The
// instances used with this oracle mention no value above 3 and no modulus
// other than 2 or 3.

#include <vector>

#include "baire/codes.hpp"
#include "baire/encode.hpp"

namespace oracle {

using baire::Nat;
using baire::Node;

class TruncatedGame {
 public:
  static constexpr unsigned kLock = 4;
  static constexpr unsigned kPoolEnd = 16;
  static constexpr unsigned kOpening = 3;

  TruncatedGame(const baire::ChallengeCode& j, Nat m, const baire::ASet& A) : j_(j), m_(std::move(m)), A_(A) {}

  bool iiWins(const Node& t, unsigned floor) const { return firstI(t, floor); }

 private:
  std::vector<unsigned> pool(unsigned floor) const {
    std::vector<unsigned> out;
    for (unsigned v = floor; v < kPoolEnd; ++v) out.push_back(v);
    return out;
  }

  // Values at least floor, one per residue mod 6 above kLock.
  std::vector<unsigned> poolI(unsigned floor) const {
    std::vector<unsigned> out;
    for (unsigned v = floor; v < kPoolEnd && (v < kLock || v < std::max(floor, kLock) + 6); ++v) out.push_back(v);
    return out;
  }

  template <class F>
  bool forEveryExtension(const Node& t, unsigned floor, unsigned maxLen, F&& f) const {
    if (!f(t)) return false;
    if (maxLen == 0) return true;
    for (unsigned v : poolI(floor))
      if (!forEveryExtension(baire::append(t, Nat(v)), floor, maxLen - 1, f)) return false;
    return true;
  }

  bool firstI(const Node& t, unsigned floor) const {
    for (unsigned lockFloor : {floor, std::max(floor, kLock)}) {
      bool ok = forEveryExtension(t, floor, kOpening, [&](const Node& s) { return replyII(s, lockFloor); });
      if (!ok) return false;
    }
    return true;
  }

  bool replyII(const Node& s, unsigned floor) const {
    for (unsigned f : {std::max(floor, kLock), floor})
      for (unsigned v : pool(f)) {
        if (A_.contains(Nat(v))) continue;
        Node u = baire::append(s, Nat(v));
        if (secondI(u, f)) return true;
      }
    return false;
  }

  bool secondI(const Node& u, unsigned floor) const {
    for (unsigned lockFloor : {floor, std::max(floor, kLock)}) {
      bool ok = forEveryExtension(u, floor, 1, [&](const Node& s) { return tailII(s, lockFloor); });
      if (!ok) return false;
    }
    return true;
  }

  bool tailII(const Node& s, unsigned floor) const {
    for (unsigned w : poolI(floor)) {
      bool answered = false;
      for (unsigned v : pool(floor)) {
        if (A_.contains(Nat(v))) continue;
        if (baire::evalCode(j_, baire::EventuallyPeriodicSeq(s, {Nat(w), Nat(v)})) == m_) {
          answered = true;
          break;
        }
      }
      if (!answered) return false;
    }
    return true;
  }

  const baire::ChallengeCode& j_;
  Nat m_;
  const baire::ASet& A_;
};

}  // namespace oracle
