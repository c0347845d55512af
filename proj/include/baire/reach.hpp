#pragma once

// Reachability ranks over node sets presented by quotient automata, the
// blocking side condition for unreachable nodes, and A-avoiding extensions
// into the set for reachable ones.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "baire/classes.hpp"
#include "baire/encode.hpp"

namespace baire {

struct AutomatonState {
  ClassPartition classes;
  std::vector<std::size_t> next;  // one target per class
  bool accepting = false;
};

/// Classifies nodes by running over their entries; S is the set of nodes
/// whose run ends in an accepting state.
struct QuotientAutomaton {
  std::vector<AutomatonState> states;
  std::size_t start = 0;

  void validate() const {
    if (states.empty() || start >= states.size()) throw DomainError("InvalidInput", "automaton has no start state");
    for (const auto& s : states) {
      validatePartition(s.classes);
      if (s.next.size() != s.classes.size())
        throw DomainError("InvalidInput", "automaton state needs one transition per class");
      for (auto q : s.next)
        if (q >= states.size()) throw DomainError("InvalidInput", "transition to unknown state");
    }
  }

  std::size_t step(std::size_t q, const Nat& n) const { return states[q].next[classify(states[q].classes, n)]; }

  std::size_t run(const Node& t) const { return runFrom(start, t); }

  std::size_t runFrom(std::size_t q, const Node& t) const {
    for (const auto& n : t) q = step(q, n);
    return q;
  }

  bool accepts(const Node& t) const { return states[run(t)].accepting; }
};

/// Rank of every state: 0 when accepting, otherwise one more than the least
/// rank among targets of infinite classes; nullopt when never reached.
inline std::vector<std::optional<std::size_t>> stateRanks(const QuotientAutomaton& s) {
  std::vector<std::optional<std::size_t>> rank(s.states.size());
  for (std::size_t q = 0; q < s.states.size(); ++q)
    if (s.states[q].accepting) rank[q] = 0;
  for (std::size_t round = 1; round <= s.states.size(); ++round) {
    auto prev = rank;
    for (std::size_t q = 0; q < s.states.size(); ++q) {
      if (prev[q]) continue;
      const auto& st = s.states[q];
      for (std::size_t c = 0; c < st.classes.size(); ++c)
        if (st.classes[c].infinite() && prev[st.next[c]] && *prev[st.next[c]] == round - 1) rank[q] = round;
    }
  }
  return rank;
}

inline std::optional<std::size_t> rankOf(const QuotientAutomaton& s, std::size_t q) { return stateRanks(s).at(q); }

// ---------------------------------------------------------------------------
// Side conditions

/// h(t) = levels[|t|] when listed, otherwise tail.
struct LevelTable {
  std::map<std::size_t, Nat> levels;
  Nat tail = 0;

  Nat at(std::size_t level) const {
    auto it = levels.find(level);
    return it == levels.end() ? tail : it->second;
  }
};

/// h(t) = bounds[state reached by t].
struct StateBound {
  QuotientAutomaton automaton;
  std::vector<Nat> bounds;
};

/// h(t) = max over the primitives (0 when there are none).
struct HFun {
  std::vector<std::variant<LevelTable, StateBound>> parts;

  static HFun constant(const Nat& k) { return HFun{{LevelTable{{}, k}}}; }

  Nat operator()(const Node& t) const {
    Nat v = 0;
    for (const auto& p : parts) {
      if (auto* lt = std::get_if<LevelTable>(&p)) v = std::max(v, lt->at(t.size()));
      else {
        const auto& sb = std::get<StateBound>(p);
        v = std::max(v, sb.bounds.at(sb.automaton.run(t)));
      }
    }
    return v;
  }

  /// Largest value h takes anywhere.
  Nat supremum() const {
    Nat v = 0;
    for (const auto& p : parts) {
      if (auto* lt = std::get_if<LevelTable>(&p)) {
        v = std::max(v, lt->tail);
        for (const auto& [l, b] : lt->levels) v = std::max(v, b);
      } else {
        for (const auto& b : std::get<StateBound>(p).bounds) v = std::max(v, b);
      }
    }
    return v;
  }

  /// Pointwise maximum.
  HFun join(const HFun& other) const {
    HFun out = *this;
    out.parts.insert(out.parts.end(), other.parts.begin(), other.parts.end());
    return out;
  }
};

namespace detail {

/// Nodes collapse to (level capped past every table entry, state of each
/// automaton); explores the reachable part of that product.
class SideProduct {
 public:
  explicit SideProduct(std::vector<const HFun*> fns) : fns_(std::move(fns)) {
    for (const auto* f : fns_)
      for (const auto& p : f->parts) {
        if (auto* lt = std::get_if<LevelTable>(&p)) {
          for (const auto& [l, v] : lt->levels) cap_ = std::max(cap_, l + 1);
        } else {
          autos_.push_back(&std::get<StateBound>(p).automaton);
        }
      }
  }

  template <class Visit>
  void explore(Visit&& visit, std::size_t maxStates = 100000) const {
    using Key = std::pair<std::size_t, std::vector<std::size_t>>;
    std::vector<std::size_t> init;
    for (const auto* a : autos_) init.push_back(a->start);
    std::set<Key> seen{{0, init}};
    std::deque<Key> work{{0, init}};
    while (!work.empty()) {
      auto [level, qs] = work.front();
      work.pop_front();
      visit(level, qs);
      Distinctions d;
      for (std::size_t i = 0; i < autos_.size(); ++i) d.absorb(autos_[i]->states[qs[i]].classes);
      for (const auto& v : d.representatives(0)) {
        std::vector<std::size_t> nq(qs.size());
        for (std::size_t i = 0; i < autos_.size(); ++i) nq[i] = autos_[i]->step(qs[i], v);
        Key k{std::min(level + 1, cap_), nq};
        if (seen.insert(k).second) {
          if (seen.size() > maxStates)
            throw DomainError("IncomparableSideConditions", "side-condition product too large to compare");
          work.push_back(k);
        }
      }
    }
  }

  /// Value of f at a collapsed node; automaton states are consumed in the
  /// order the constructor saw them.
  Nat value(const HFun& f, std::size_t level, const std::vector<std::size_t>& qs) const {
    std::size_t idx = 0;
    for (const auto* g : fns_) {
      if (g == &f) break;
      for (const auto& p : g->parts) idx += std::holds_alternative<StateBound>(p) ? 1 : 0;
    }
    Nat v = 0;
    for (const auto& p : f.parts) {
      if (auto* lt = std::get_if<LevelTable>(&p)) {
        v = std::max(v, level >= cap_ ? lt->tail : lt->at(level));
      } else {
        v = std::max(v, std::get<StateBound>(p).bounds.at(qs[idx++]));
      }
    }
    return v;
  }

 private:
  std::vector<const HFun*> fns_;
  std::vector<const QuotientAutomaton*> autos_;
  std::size_t cap_ = 0;
};

}  // namespace detail

/// hi >= lo at every node.
inline bool hGeq(const HFun& hi, const HFun& lo) {
  detail::SideProduct prod({&hi, &lo});
  bool ok = true;
  prod.explore([&](std::size_t level, const std::vector<std::size_t>& qs) {
    if (prod.value(hi, level, qs) < prod.value(lo, level, qs)) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Dichotomy witnesses

/// Side condition blocking every unreachable state: 1 + the largest member
/// of a finite class leading to a reachable state, 0 elsewhere.
inline HFun blockingH(const QuotientAutomaton& s) {
  auto rank = stateRanks(s);
  std::vector<Nat> bounds(s.states.size(), 0);
  for (std::size_t q = 0; q < s.states.size(); ++q) {
    if (rank[q]) continue;
    const auto& st = s.states[q];
    for (std::size_t c = 0; c < st.classes.size(); ++c) {
      if (st.classes[c].infinite() || !rank[st.next[c]]) continue;
      for (const auto& v : st.classes[c].include) bounds[q] = std::max(bounds[q], Nat(v + 1));
    }
  }
  return HFun{{StateBound{s, bounds}}};
}

/// Least n in the class with n >= floor, n <= bound and n outside A.
inline Nat classAvoidWitness(const NatClass& c, const ASet& A, const Nat& floor, const Nat& bound) {
  Constraint k({c});
  Nat from = floor;
  while (auto n = k.nextMember(from)) {
    if (*n > bound) break;
    if (!A.contains(*n)) return *n;
    from = *n + 1;
  }
  throw DomainError("ClassCaptured", "no member >= " + floor.str() + " outside A up to " + bound.str());
}

/// Greedy rank descent from t: each appended entry lies in an infinite
/// class of strictly smaller rank, is at least h(prefix) and avoids A.
inline Node findExtension(const QuotientAutomaton& s, const Node& t, const ASet& A, const HFun& h,
                          const Nat& searchBound) {
  auto rank = stateRanks(s);
  Node out = t;
  std::size_t q = s.run(t);
  if (!rank[q]) throw DomainError("NotReachable", "node " + toString(t) + " is not reachable");
  while (*rank[q] > 0) {
    const auto& st = s.states[q];
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < st.classes.size(); ++c) {
      if (!st.classes[c].infinite() || !rank[st.next[c]]) continue;
      if (!pick || *rank[st.next[c]] < *rank[st.next[*pick]]) pick = c;
    }
    Nat n = classAvoidWitness(st.classes[*pick], A, h(out), searchBound);
    out.push_back(n);
    q = st.next[*pick];
  }
  return out;
}

}  // namespace baire
