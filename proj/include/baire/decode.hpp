#pragma once

// Recovering a sequence from any code dominating its exit function, and a
// subset of a finite alphabet from any code dominating its first-hit
// function. Both work through the node set
//   B = { t : g(x) >= |t| for every x extending t }.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "baire/codes.hpp"

namespace baire {

struct DecodeParams {
  std::size_t targetLength = 32;      // N
  std::size_t thresholdBound = 8;     // L0
  std::size_t childSearchBound = 16;  // digits tried per position
  std::size_t candidateBound = 64;
};

inline bool inBSet(const ChallengeCode& g, const Node& t) { return infOverCylinder(g, t) >= t.size(); }

struct DecodedCandidate {
  Node node;
  std::size_t threshold;  // first level from which every digit was forced

  friend bool operator==(const DecodedCandidate&, const DecodedCandidate&) = default;
};

namespace detail {

class DominationDecoder {
 public:
  DominationDecoder(const ChallengeCode& g, const DecodeParams& p) : g_(g), p_(p) {}

  /// The unique n <= bound with v^n outside B, all other tried n inside.
  std::optional<Nat> forcedDigit(const Node& v) const {
    std::optional<Nat> found;
    Node child = v;
    child.emplace_back();
    for (std::size_t n = 0; n <= p_.childSearchBound; ++n) {
      child.back() = n;
      if (!inBSet(g_, child)) {
        if (found) return std::nullopt;
        found = Nat(n);
      }
    }
    return found;
  }

  std::vector<DecodedCandidate> run() const {
    // A node surviving from a seed of length l also survives from its own
    // longer prefixes, so seeds of the largest admissible length suffice.
    // At least one digit must be forced, otherwise nothing is pruned.
    const std::size_t seedLen =
        p_.targetLength == 0 ? 0 : std::min(p_.thresholdBound, p_.targetLength - 1);
    // One representative per equivalence class of digits at each seed
    // position, with the concrete members it stands for.
    std::vector<std::vector<std::pair<Nat, std::vector<Nat>>>> classes(seedLen);
    for (std::size_t pos = 0; pos < seedLen; ++pos) {
      Distinctions d = distinctionsAt(g_, pos);
      std::map<std::uint64_t, std::vector<Nat>> ordinary;
      for (std::size_t n = 0; n <= p_.childSearchBound; ++n) {
        Nat v = n;
        if (d.specials.count(v)) classes[pos].push_back({v, {v}});
        else ordinary[n % d.modulus].push_back(v);
      }
      for (auto& [r, members] : ordinary) classes[pos].push_back({members.front(), members});
    }

    std::vector<std::vector<std::vector<Nat>>> survivors;  // per-position member lists
    std::vector<Node> tails;
    std::vector<std::vector<Nat>> choice;
    Node seed;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == seedLen) {
        Node u = seed;
        while (u.size() < p_.targetLength) {
          auto n = forcedDigit(u);
          if (!n) return;
          u.push_back(*n);
        }
        survivors.push_back(choice);
        tails.emplace_back(u.begin() + static_cast<std::ptrdiff_t>(seedLen), u.end());
        return;
      }
      for (const auto& [rep, members] : classes[pos]) {
        seed.push_back(rep);
        choice.push_back(members);
        rec(pos + 1);
        choice.pop_back();
        seed.pop_back();
      }
    };
    rec(0);

    std::size_t total = 0;
    for (const auto& s : survivors) {
      std::size_t k = 1;
      for (const auto& m : s) {
        k *= m.size();
        if (k > p_.candidateBound) break;
      }
      total += k;
      if (total > p_.candidateBound)
        throw DomainError("CandidateOverflow", "more than " + std::to_string(p_.candidateBound) +
                                                   " surviving candidates");
    }

    std::set<Node> nodes;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      std::function<void(Node&, std::size_t)> expand = [&](Node& cur, std::size_t pos) {
        if (pos == seedLen) {
          nodes.insert(concat(cur, tails[i]));
          return;
        }
        for (const auto& v : survivors[i][pos]) {
          cur.push_back(v);
          expand(cur, pos + 1);
          cur.pop_back();
        }
      };
      Node cur;
      expand(cur, 0);
    }

    std::vector<DecodedCandidate> out;
    for (const auto& u : nodes) {
      std::size_t l = seedLen;
      while (l > 0) {
        auto n = forcedDigit(truncate(u, l - 1));
        if (!n || *n != u[l - 1]) break;
        --l;
      }
      out.push_back({u, l});
    }
    return out;
  }

 private:
  const ChallengeCode& g_;
  DecodeParams p_;
};

}  // namespace detail

/// Every node of length N obtained from a seed of length at most L0 (and
/// below N) by repeatedly appending the unique digit leaving B. Seeds are
/// explored one per equivalence class of digits (the code cannot tell class
/// members apart), so the search is exact for digits up to childSearchBound.
/// Candidates come back in lexicographic order.
inline std::vector<DecodedCandidate> decodeFromDomination(const ChallengeCode& g, const DecodeParams& p) {
  return detail::DominationDecoder(g, p).run();
}

inline std::optional<Nat> forcedDigit(const ChallengeCode& g, const Node& v, std::size_t childSearchBound) {
  DecodeParams p;
  p.childSearchBound = childSearchBound;
  return detail::DominationDecoder(g, p).forcedDigit(v);
}

// ---------------------------------------------------------------------------
// Finite alphabet

inline std::vector<Nat> alphabetOf(std::size_t size) {
  std::vector<Nat> x;
  for (std::size_t i = 0; i < size; ++i) x.emplace_back(i);
  return x;
}

inline bool inBSetOver(const ChallengeCode& g, const Node& t, const std::vector<Nat>& alphabet) {
  return rangeOverCylinder(g, Cylinder{t, {}, alphabet}).lo >= t.size();
}

/// { z : t^z in B } over the alphabet.
inline std::set<Nat> recoveredAt(const ChallengeCode& g, const Node& t, const std::vector<Nat>& alphabet) {
  std::set<Nat> out;
  for (const auto& z : alphabet)
    if (inBSetOver(g, append(t, z), alphabet)) out.insert(z);
  return out;
}

struct HorizDecodeResult {
  Node stem;
  std::set<Nat> recovered;
  std::size_t iterations;
};

/// Counterexample loop: start at the empty node; while the candidate set
/// {z : t^z in B} contains a z outside the hidden set, append the least such
/// z. `hidden` answers membership in the hidden set; the loop only consults
/// it to pick the counterexample.
inline HorizDecodeResult horizDecode(const ChallengeCode& g, const std::vector<Nat>& alphabet,
                                     const std::function<bool(const Nat&)>& hidden, std::size_t bound) {
  Node t;
  for (std::size_t it = 1; it <= bound; ++it) {
    auto r = recoveredAt(g, t, alphabet);
    std::optional<Nat> spurious;
    for (const auto& z : r)
      if (!hidden(z)) {
        spurious = z;
        break;
      }
    if (!spurious) return {t, r, it};
    t.push_back(*spurious);
  }
  throw DomainError("BoundExceeded", "counterexample loop exceeded " + std::to_string(bound) + " iterations");
}

/// Without access to the hidden set: every (t, {z : t^z in B}) the loop can
/// visit for some hidden set, t ranging over chains of candidate digits.
inline std::vector<HorizDecodeResult> horizCandidates(const ChallengeCode& g, const std::vector<Nat>& alphabet,
                                                      std::size_t bound) {
  std::vector<HorizDecodeResult> out;
  std::vector<Node> frontier{{}};
  for (std::size_t it = 1; it <= bound && !frontier.empty(); ++it) {
    std::vector<Node> next;
    for (const auto& t : frontier) {
      auto r = recoveredAt(g, t, alphabet);
      out.push_back({t, r, it});
      for (const auto& z : r) next.push_back(append(t, z));
    }
    frontier = std::move(next);
  }
  return out;
}

/// g >= f_A on X^omega, checked on every hit cylinder t^z (t avoiding A,
/// z in A) with |t| < depth.
inline bool checkHorizDomination(const ChallengeCode& g, const std::set<Nat>& hidden,
                                 const std::vector<Nat>& alphabet, std::size_t depth) {
  std::vector<Nat> outside;
  for (const auto& z : alphabet)
    if (!hidden.count(z)) outside.push_back(z);
  std::vector<Node> layer{{}};
  for (std::size_t len = 0; len < depth; ++len) {
    std::vector<Node> next;
    for (const auto& t : layer) {
      for (const auto& z : hidden)
        if (rangeOverCylinder(g, Cylinder{append(t, z), {}, alphabet}).lo < len + 1) return false;
      for (const auto& z : outside) next.push_back(append(t, z));
    }
    layer = std::move(next);
  }
  return true;
}

}  // namespace baire
