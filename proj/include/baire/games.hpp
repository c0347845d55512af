#pragma once

// The game G(j, m): Player I extends the current condition freely, Player II
// extends it avoiding A, and II wins when j(x) = m for the limit point x.
// For codes into {0,1} the winner is computable: I moves first and may raise
// the side condition above every value j distinguishes, after which j only
// sees the residues of the entries up to a finite horizon. So II wins
// exactly when every stem to the right of the side condition, padded to the
// horizon, yields m on large tails; II's strategy raises the side condition
// as well and keeps appending large values outside A.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "baire/codes.hpp"
#include "baire/encode.hpp"
#include "baire/hechler.hpp"
#include "baire/reach.hpp"

namespace baire {

struct GameBounds {
  std::size_t maxHorizon = 48;
  std::size_t maxNodes = 200000;  // refutation search
  std::size_t maxStates = 50000;  // quotient automaton for S(n, m)
  Nat witnessBound = 1000000;
};

namespace detail {

inline Nat largestCutoff(const ChallengeCode& j) {
  Nat k = 0;
  forEachLeaf(j, [&](const Leaf& l) {
    if (auto* t = std::get_if<ThreshLeaf>(&l.v)) k = std::max(k, t->cutoff);
  });
  return k;
}

/// What the game needs to know about a finite set of codes: a horizon past
/// which large entries change nothing, everything they distinguish, and a
/// lock level above all special values.
struct GameShape {
  std::size_t horizon = 0;
  Distinctions global;
  Nat lock = 0;

  void absorb(const ChallengeCode& j, const GameBounds& b) {
    if (!isBitValued(j)) throw DomainError("InvalidInput", "game codes must take values in {0,1}");
    Nat cut = largestCutoff(j);
    std::size_t h = structuralHorizon(j);
    if (cut > b.maxHorizon || h > b.maxHorizon)
      throw DomainError("BoundExceeded", "game horizon exceeds " + std::to_string(b.maxHorizon));
    horizon = std::max(horizon, std::max(h, static_cast<std::size_t>(cut)) + 1);
    for (std::size_t p = 0; p <= horizon; ++p) global.merge(distinctionsAt(j, p));
    for (const auto& s : allSpines(j)) {
      global.specials.insert(s.prefix().begin(), s.prefix().end());
      global.specials.insert(s.period().begin(), s.period().end());
    }
    if (!global.specials.empty()) lock = std::max(lock, Nat(*global.specials.rbegin() + 1));
  }

  /// A large value at least `floor`, outside A.
  Nat large(const Nat& floor, const ASet* A = nullptr) const {
    Nat v = global.ordinaryRep(0, std::max(floor, lock));
    while (A && A->contains(v)) v += global.modulus;
    return v;
  }
};

inline GameShape shapeOf(const std::vector<ChallengeCode>& codes, const GameBounds& b) {
  GameShape g;
  for (const auto& j : codes) g.absorb(j, b);
  return g;
}

/// h joined with the constant k, unless h already contains it.
inline HFun raisedTo(const HFun& h, const Nat& k) {
  for (const auto& p : h.parts)
    if (auto* lt = std::get_if<LevelTable>(&p); lt && lt->levels.empty() && lt->tail >= k) return h;
  return h.join(HFun::constant(k));
}

/// A play for I against m: a stem s to the right of p's side condition with
/// j(s followed by large values) != m. Children at each position are one
/// value per class j distinguishes there.
inline std::optional<Node> refutation(const Condition& p, const ChallengeCode& j, const Nat& m,
                                      const GameShape& g, std::size_t maxNodes) {
  std::vector<Node> stack{p.stem};
  std::size_t visited = 0;
  const Nat tail = g.large(p.side.supremum());
  auto pad = [&](Node s) {
    while (s.size() < g.horizon) s.push_back(tail);
    return s;
  };
  while (!stack.empty()) {
    Node s = std::move(stack.back());
    stack.pop_back();
    if (++visited > maxNodes) throw DomainError("BoundExceeded", "game search visited more than " + std::to_string(maxNodes) + " nodes");
    if (auto v = determinedValue(j, s)) {
      if (*v != m) return pad(s);
      continue;
    }
    if (s.size() >= g.horizon) {
      if (evalCode(j, EventuallyPeriodicSeq(s, {tail})) != m) return s;
      continue;
    }
    for (const auto& v : distinctionsAt(j, s.size()).representatives(p.side(s))) stack.push_back(append(s, v));
  }
  return std::nullopt;
}

}  // namespace detail

/// II's winning strategy for G(j, m): raise the side condition to the lock
/// level and append the least large value outside A. Stateful; counts the
/// moves it has made.
class StrategyHandle {
 public:
  StrategyHandle(Nat m, ASet A, detail::GameShape shape) : m_(std::move(m)), A_(std::move(A)), shape_(std::move(shape)) {}

  const Nat& target() const noexcept { return m_; }
  const Nat& lock() const noexcept { return shape_.lock; }
  std::size_t moves() const noexcept { return moves_; }

  Condition nextMove(const Condition& pos) {
    HFun side = detail::raisedTo(pos.side, shape_.lock);
    Nat v = shape_.large(side(pos.stem), &A_);
    ++moves_;
    return {append(pos.stem, v), side};
  }

 private:
  Nat m_;
  ASet A_;
  detail::GameShape shape_;
  std::size_t moves_ = 0;
};

inline std::optional<StrategyHandle> ensures(const Condition& p, const ChallengeCode& j, const Nat& m, const ASet& A,
                                             const GameBounds& bounds = {}) {
  if (m > 1) throw DomainError("InvalidInput", "target must be 0 or 1");
  auto shape = detail::shapeOf({j}, bounds);
  if (detail::refutation(p, j, m, shape, bounds.maxNodes)) return std::nullopt;
  return StrategyHandle(m, A, shape);
}

/// I's winning play against m, if I has one.
inline std::optional<Node> refutingPlay(const Condition& p, const ChallengeCode& j, const Nat& m,
                                        const GameBounds& bounds = {}) {
  auto shape = detail::shapeOf({j}, bounds);
  return detail::refutation(p, j, m, shape, bounds.maxNodes);
}

struct EnsureStep {
  Condition p;
  Nat m;
};

namespace detail {

/// Some (t', h') <=^A p ensuring j = m for some m: lock the side condition,
/// then append large values outside A until one value is forced.
inline EnsureStep ensureSomething(const Condition& p, const ChallengeCode& j, const ASet& A, const GameShape& g,
                                  const GameBounds& b) {
  Condition q{p.stem, raisedTo(p.side, g.lock)};
  for (std::size_t step = 0;; ++step) {
    for (unsigned m = 0; m < 2; ++m)
      if (!refutation(q, j, Nat(m), g, b.maxNodes)) return {q, Nat(m)};
    if (q.stem.size() > g.horizon + p.stem.size())
      throw DomainError("EnsureFailed", "no extension of " + toString(p.stem) + " ensures a value");
    q.stem.push_back(g.large(q.side(q.stem), &A));
  }
}

}  // namespace detail

/// Some m and (t', h') <=^A p ensuring j(x) = m.
inline EnsureStep ensureSomeValue(const Condition& p, const ChallengeCode& j, const ASet& A,
                                  const GameBounds& bounds = {}) {
  return detail::ensureSomething(p, j, A, detail::shapeOf({j}, bounds), bounds);
}

// ---------------------------------------------------------------------------
// Fusion by strategies

/// Stage k first lets every strategy obtained so far move once, in order,
/// then ensures coordinate k of g and bumps the stem with the least e in A
/// carrying that value.
inline FusionCertificate playFusion(const EventuallyPeriodicSeq& a, const FunctionFamilyCode& g, std::size_t n,
                                    const GameBounds& bounds = {}) {
  ASet A(a);
  FusionCertificate cert;
  Condition p{{}, HFun{}};
  Nat level = 0;
  std::vector<StrategyHandle> active;
  auto raise = [&](const Nat& k) {
    if (k <= level) return;
    level = k;
    cert.raises.push_back({p.stem.size(), k});
    p.side = detail::raisedTo(p.side, k);
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < active.size(); ++i) {
      raise(active[i].lock());
      Condition next = active[i].nextMove(p);
      cert.moves.push_back({next.stem.back(), MoveKind::Strategy, p.side(p.stem), i});
      p.stem = next.stem;
    }
    auto ck = coordinateCode(g, k);
    if (!isBitValued(ck)) throw DomainError("InvalidInput", "coordinate " + std::to_string(k) + " is not bit-valued");
    auto shape = detail::shapeOf({ck}, bounds);
    raise(shape.lock);
    EnsureStep step;
    try {
      step = detail::ensureSomething(p, ck, A, shape, bounds);
    } catch (const DomainError& e) {
      if (e.kind() != "EnsureFailed") throw;
      throw DomainError("EnsureFailed", "coordinate " + std::to_string(k) + ": " + e.what());
    }
    for (std::size_t i = p.stem.size(); i < step.p.stem.size(); ++i)
      cert.moves.push_back({step.p.stem[i], MoveKind::Ensure, p.side(truncate(step.p.stem, i)), k});
    p.stem = step.p.stem;
    active.emplace_back(step.m, A, shape);
    Nat floor = p.side(p.stem);
    Nat e = A.leastWithEta(step.m, floor);
    cert.coordinates.push_back({k, step.m, p.stem.size(), p.stem.size(), true});
    cert.moves.push_back({e, MoveKind::Bump, floor, k});
    p.stem.push_back(e);
  }
  cert.xPrefix = p.stem;
  cert.filler = detail::leastOutside(A, p.side.supremum());
  return cert;
}

// ---------------------------------------------------------------------------
// Limits of finite families

/// j_0, ..., j_K with j_n = j_K for n > K; the limit is j_K.
struct Baire1Family {
  std::vector<ChallengeCode> codes;

  std::size_t lastIndex() const { return codes.size() - 1; }
  const ChallengeCode& at(std::size_t n) const { return codes[std::min(n, lastIndex())]; }
};

struct LimitStep {
  std::size_t n;
  Nat m;
  std::size_t stemLength;
};

struct LimitResult {
  Nat m;
  Condition p;
  std::vector<LimitStep> trace;
  bool blocked = false;  // ended by the blocking side condition
};

namespace detail {

/// Quotient automaton for S(n, m) = { t : some j_{n'} with n' >= n is
/// ensured to be m at t under the lock }. Below the horizon a state is the
/// sequence of classes seen; past it, only which first-hit sets have been
/// hit since the horizon still matters.
inline QuotientAutomaton limitAutomaton(const Baire1Family& fam, std::size_t n, const Nat& m, const GameShape& g,
                                        const GameBounds& b) {
  std::vector<const ChallengeCode*> codes;
  for (std::size_t k = n; k <= std::max(n, fam.lastIndex()); ++k) codes.push_back(&fam.at(k));

  auto partitionOf = [](const Distinctions& d) {
    ClassPartition out;
    for (const auto& s : d.specials) out.push_back(NatClass::finite({s}));
    for (std::uint64_t r = 0; r < d.modulus; ++r) {
      NatClass c = NatClass::residue(d.modulus, {r});
      for (const auto& s : d.specials)
        if (s % d.modulus == r) c.exclude.push_back(s);
      out.push_back(c);
    }
    return out;
  };
  std::vector<ClassPartition> below;
  for (std::size_t p = 0; p < g.horizon; ++p) {
    Distinctions d;
    for (const auto* j : codes) d.merge(distinctionsAt(*j, p));
    below.push_back(partitionOf(d));
  }
  std::vector<std::set<Nat>> hitSets;
  std::set<Nat> hitUnion;
  for (const auto* j : codes)
    forEachLeaf(*j, [&](const Leaf& l) {
      if (auto* f = std::get_if<FirstHitLeaf>(&l.v)) {
        if (std::find(hitSets.begin(), hitSets.end(), f->hits) == hitSets.end()) hitSets.push_back(f->hits);
        hitUnion.insert(f->hits.begin(), f->hits.end());
      }
    });
  if (hitSets.size() > 16) throw DomainError("BoundExceeded", "too many first-hit sets");
  ClassPartition beyond;
  for (const auto& v : hitUnion) beyond.push_back(NatClass::finite({v}));
  beyond.push_back(NatClass::allExcept(std::vector<Nat>(hitUnion.begin(), hitUnion.end())));

  using Key = std::pair<std::vector<std::size_t>, std::uint32_t>;
  std::map<Key, std::size_t> index;
  std::vector<Key> keys;
  std::vector<Node> reps;
  QuotientAutomaton S;
  auto intern = [&](const Key& k, const Node& rep) {
    auto [it, fresh] = index.emplace(k, reps.size());
    if (fresh) {
      if (reps.size() >= b.maxStates)
        throw DomainError("BoundExceeded", "quotient for S(n, m) exceeds " + std::to_string(b.maxStates) + " states");
      keys.push_back(k);
      reps.push_back(rep);
      S.states.emplace_back();
    }
    return it->second;
  };
  intern({{}, 0}, {});
  for (std::size_t q = 0; q < reps.size(); ++q) {
    const Key key = keys[q];
    const Node rep = reps[q];
    const bool past = key.first.size() == g.horizon;
    const ClassPartition& part = past ? beyond : below[key.first.size()];
    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < part.size(); ++c) {
      const NatClass& cls = part[c];
      Nat v = cls.infinite() ? *Constraint({cls}).nextMember(g.lock) : cls.include.front();
      Key nk = key;
      if (past) {
        for (std::size_t h = 0; h < hitSets.size(); ++h)
          if (hitSets[h].count(v)) nk.second |= 1u << h;
      } else {
        nk.first.push_back(c);
      }
      next.push_back(intern(nk, append(rep, v)));
    }
    S.states[q].classes = part;
    S.states[q].next = std::move(next);
  }
  Condition locked{{}, HFun::constant(g.lock)};
  for (std::size_t q = 0; q < reps.size(); ++q) {
    locked.stem = reps[q];
    for (const auto* j : codes)
      if (!refutation(locked, *j, m, g, b.maxNodes)) {
        S.states[q].accepting = true;
        break;
      }
  }
  return S;
}

}  // namespace detail

/// Alternation: ensure j_{n_0} = m_0; while S(n_i + 1, 1 - m_i) is reachable
/// from the current stem, extend into it and ensure the later code found
/// there with the flipped value. Once it is unreachable, the blocking side
/// condition keeps every later code, hence the limit, at m_i.
inline LimitResult limitEnsure(const Baire1Family& fam, const Condition& p, const ASet& A,
                               const GameBounds& bounds = {}) {
  if (fam.codes.empty()) throw DomainError("InvalidInput", "empty family");
  auto shape = detail::shapeOf(fam.codes, bounds);
  LimitResult out;
  auto first = detail::ensureSomething(p, fam.at(0), A, shape, bounds);
  Condition cur = first.p;
  Nat m = first.m;
  std::size_t n = 0;
  out.trace.push_back({n, m, cur.stem.size()});
  for (std::size_t round = 0; round <= fam.codes.size(); ++round) {
    auto S = detail::limitAutomaton(fam, n + 1, 1 - m, shape, bounds);
    if (!rankOf(S, S.run(cur.stem))) {
      cur.side = cur.side.join(blockingH(S));
      out.m = m;
      out.p = cur;
      out.blocked = true;
      return out;
    }
    Node t = findExtension(S, cur.stem, A, cur.side, bounds.witnessBound);
    Condition next{t, cur.side};
    std::optional<std::size_t> found;
    for (std::size_t k = n + 1; k <= std::max(n + 1, fam.lastIndex()) && !found; ++k)
      if (!detail::refutation(next, fam.at(k), 1 - m, shape, bounds.maxNodes)) found = k;
    if (!found) throw DomainError("EnsureFailed", "no later code is ensured at " + toString(t));
    cur = next;
    m = 1 - m;
    n = *found;
    out.trace.push_back({n, m, cur.stem.size()});
  }
  throw DomainError("BoundExceeded", "alternation did not settle within the family length");
}

}  // namespace baire
