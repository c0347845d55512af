#pragma once

// A small language of total challenge functions g : omega^omega -> omega.
// A code is a finite query tree: internal nodes read one coordinate and
// branch on its class in a partition; leaves are constants, exit levels
// from a presented tree, first-hit positions of a finite set, or a 0/1
// threshold of another leaf. Cylinder infima and suprema are exact.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "baire/classes.hpp"
#include "baire/core.hpp"

namespace baire {

struct Leaf;

struct ConstLeaf {
  Nat value;
};

/// exit + shift + offset, or dflt + offset on a divergent point.
struct ExitLeaf {
  PresentedTree tree;
  Nat dflt = 0;
  Nat offset = 0;
  std::size_t shift = 0;
};

/// (first i >= start with x(i) in hits) + 1 + offset, or dflt if none.
struct FirstHitLeaf {
  std::set<Nat> hits;
  std::size_t start = 0;
  Nat offset = 0;
  Nat dflt = 0;
};

/// 1 if inner >= cutoff, else 0.
struct ThreshLeaf {
  std::shared_ptr<const Leaf> inner;
  Nat cutoff;
};

struct Leaf {
  std::variant<ConstLeaf, ExitLeaf, FirstHitLeaf, ThreshLeaf> v;
};

class ChallengeCode;

struct QueryNode {
  std::size_t coordinate = 0;
  ClassPartition partition;
  std::vector<ChallengeCode> children;
};

class ChallengeCode {
 public:
  static ChallengeCode leaf(Leaf l) { return ChallengeCode(std::make_shared<const Body>(std::move(l))); }
  static ChallengeCode constant(Nat k) { return leaf(Leaf{ConstLeaf{std::move(k)}}); }
  static ChallengeCode exit(PresentedTree t, Nat dflt = 0, Nat offset = 0, std::size_t shift = 0) {
    return leaf(Leaf{ExitLeaf{std::move(t), std::move(dflt), std::move(offset), shift}});
  }
  static ChallengeCode firstHit(std::set<Nat> hits, std::size_t start = 0, Nat offset = 0, Nat dflt = 0) {
    return leaf(Leaf{FirstHitLeaf{std::move(hits), start, std::move(offset), std::move(dflt)}});
  }
  static ChallengeCode thresh(Leaf inner, Nat cutoff) {
    return leaf(Leaf{ThreshLeaf{std::make_shared<const Leaf>(std::move(inner)), std::move(cutoff)}});
  }
  static ChallengeCode query(std::size_t coordinate, ClassPartition p, std::vector<ChallengeCode> children) {
    validatePartition(p);
    if (p.size() != children.size())
      throw DomainError("InvalidInput", "query node needs one child per class");
    return ChallengeCode(std::make_shared<const Body>(QueryNode{coordinate, std::move(p), std::move(children)}));
  }

  bool isLeaf() const { return std::holds_alternative<Leaf>(*body_); }
  const Leaf& asLeaf() const { return std::get<Leaf>(*body_); }
  const QueryNode& asQuery() const { return std::get<QueryNode>(*body_); }

 private:
  using Body = std::variant<Leaf, QueryNode>;
  explicit ChallengeCode(std::shared_ptr<const Body> b) : body_(std::move(b)) {}
  std::shared_ptr<const Body> body_;
};

/// g : omega^omega -> omega^omega with g(x)(n) = base(<n>^x).
struct FunctionFamilyCode {
  ChallengeCode base;
};

// ---------------------------------------------------------------------------
// Evaluation

inline Nat evalLeaf(const Leaf& leaf, const EventuallyPeriodicSeq& x) {
  return std::visit(
      [&](const auto& l) -> Nat {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ConstLeaf>) {
          return l.value;
        } else if constexpr (std::is_same_v<T, ExitLeaf>) {
          auto e = exitLevel(l.tree, x);
          return e ? Nat(*e + l.shift) + l.offset : l.dflt + l.offset;
        } else if constexpr (std::is_same_v<T, FirstHitLeaf>) {
          std::size_t end = std::max(l.start, x.prefix().size()) + x.period().size();
          for (std::size_t i = l.start; i < end; ++i)
            if (l.hits.count(x.at(i))) return Nat(i + 1) + l.offset;
          return l.dflt;
        } else {
          return evalLeaf(*l.inner, x) >= l.cutoff ? Nat(1) : Nat(0);
        }
      },
      leaf.v);
}

inline Nat evalCode(const ChallengeCode& c, const EventuallyPeriodicSeq& x) {
  const ChallengeCode* cur = &c;
  while (!cur->isLeaf()) {
    const auto& q = cur->asQuery();
    cur = &q.children[classify(q.partition, x.at(q.coordinate))];
  }
  return evalLeaf(cur->asLeaf(), x);
}

// ---------------------------------------------------------------------------
// Structure

namespace detail {

template <class F>
void forEachLeaf(const ChallengeCode& c, F&& f) {
  if (c.isLeaf()) {
    const Leaf* l = &c.asLeaf();
    f(*l);
    while (auto* t = std::get_if<ThreshLeaf>(&l->v)) {
      l = t->inner.get();
      f(*l);
    }
    return;
  }
  for (const auto& ch : c.asQuery().children) forEachLeaf(ch, f);
}

template <class F>
void forEachQuery(const ChallengeCode& c, F&& f) {
  if (c.isLeaf()) return;
  f(c.asQuery());
  for (const auto& ch : c.asQuery().children) forEachQuery(ch, f);
}

}  // namespace detail

/// Largest coordinate read by a query node, plus one (0 if none).
inline std::size_t queryHorizon(const ChallengeCode& c) {
  std::size_t h = 0;
  detail::forEachQuery(c, [&](const QueryNode& q) { h = std::max(h, q.coordinate + 1); });
  return h;
}

/// A depth beyond which every position behaves uniformly: past all query
/// coordinates, first-hit starts, spine prefixes and extra nodes.
inline std::size_t structuralHorizon(const ChallengeCode& c) {
  std::size_t h = queryHorizon(c);
  detail::forEachLeaf(c, [&](const Leaf& l) {
    if (auto* e = std::get_if<ExitLeaf>(&l.v)) {
      h = std::max(h, e->tree.maxExtraDepth());
      for (const auto& s : e->tree.spines()) h = std::max(h, s.prefix().size());
    } else if (auto* f = std::get_if<FirstHitLeaf>(&l.v)) {
      h = std::max(h, f->start);
    }
  });
  return h;
}

/// Values and residues that the code can distinguish at position p.
inline Distinctions distinctionsAt(const ChallengeCode& c, std::size_t p) {
  Distinctions d;
  detail::forEachQuery(c, [&](const QueryNode& q) {
    if (q.coordinate == p) d.absorb(q.partition);
  });
  detail::forEachLeaf(c, [&](const Leaf& l) {
    if (auto* e = std::get_if<ExitLeaf>(&l.v)) {
      auto vs = e->tree.valuesAt(p);
      d.specials.insert(vs.begin(), vs.end());
    } else if (auto* f = std::get_if<FirstHitLeaf>(&l.v)) {
      d.specials.insert(f->hits.begin(), f->hits.end());
    }
  });
  return d;
}

/// Every spine of every exit-leaf tree in the code.
inline std::vector<EventuallyPeriodicSeq> allSpines(const ChallengeCode& c) {
  std::vector<EventuallyPeriodicSeq> out;
  detail::forEachLeaf(c, [&](const Leaf& l) {
    if (auto* e = std::get_if<ExitLeaf>(&l.v))
      out.insert(out.end(), e->tree.spines().begin(), e->tree.spines().end());
  });
  return out;
}

inline bool hasExitLeaf(const ChallengeCode& c) {
  bool found = false;
  detail::forEachLeaf(c, [&](const Leaf& l) { found = found || std::holds_alternative<ExitLeaf>(l.v); });
  return found;
}

/// Whether every leaf is CONST 0/1 or a threshold (codes into {0,1}).
inline bool isBitValued(const ChallengeCode& c) {
  bool ok = true;
  std::function<void(const ChallengeCode&)> walk = [&](const ChallengeCode& n) {
    if (!n.isLeaf()) {
      for (const auto& ch : n.asQuery().children) walk(ch);
      return;
    }
    const auto& l = n.asLeaf();
    if (auto* k = std::get_if<ConstLeaf>(&l.v)) ok = ok && k->value <= 1;
    else if (!std::holds_alternative<ThreshLeaf>(l.v)) ok = false;
  };
  walk(c);
  return ok;
}

// ---------------------------------------------------------------------------
// Cylinder analysis

/// Closed range of attained values; `hi` empty means unbounded.
struct ValueRange {
  Nat lo;
  std::optional<Nat> hi;

  bool constant() const { return hi && *hi == lo; }
};

/// A cylinder [t] refined by class constraints on positions >= |t|,
/// optionally restricted to sequences over a finite alphabet.
struct Cylinder {
  Node stem;
  std::map<std::size_t, Constraint> constraints;
  std::optional<std::vector<Nat>> alphabet;

  Constraint at(std::size_t p) const {
    auto it = constraints.find(p);
    if (it != constraints.end()) return it->second;
    return Constraint({}, alphabet);
  }

  std::size_t uniformFrom() const {
    std::size_t u = stem.size();
    if (!constraints.empty()) u = std::max(u, constraints.rbegin()->first + 1);
    return u;
  }
};

namespace detail {

inline ValueRange exitRange(const ExitLeaf& l, const Cylinder& cyl) {
  if (cyl.alphabet) throw DomainError("InvalidInput", "exit leaves are not analyzable over a finite alphabet");
  const auto& t = cyl.stem;
  const auto& tree = l.tree;
  auto value = [&](std::size_t e) { return Nat(e + l.shift) + l.offset; };
  for (std::size_t k = 1; k <= t.size(); ++k)
    if (!tree.contains(truncate(t, k))) return {value(k), value(k)};

  // Earliest escape: breadth-first over tree nodes compatible with the cylinder.
  std::size_t minExit = 0;
  {
    std::vector<Node> frontier{t};
    for (std::size_t p = t.size(); !frontier.empty(); ++p) {
      Constraint c = cyl.at(p);
      std::vector<Node> next;
      bool escape = false;
      for (const auto& u : frontier) {
        auto kids = tree.childValues(u);
        if (c.hasMemberOutside(kids)) escape = true;
        for (const auto& v : kids)
          if (c.contains(v)) next.push_back(append(u, v));
      }
      if (escape) {
        minExit = p + 1;
        break;
      }
      frontier = std::move(next);
    }
  }

  bool divergent = false;
  for (const auto* s : tree.spinesThrough(t)) {
    bool ok = true;
    for (const auto& [p, c] : cyl.constraints)
      if (!c.contains(s->at(p))) ok = false;
    divergent = divergent || ok;
  }

  ValueRange r{value(minExit), std::nullopt};
  if (divergent) {
    r.lo = std::min(r.lo, Nat(l.dflt + l.offset));
    return r;
  }
  // No spine survives the constraints: the compatible part of the tree is finite.
  std::size_t deepest = t.size();
  std::vector<Node> frontier{t};
  for (std::size_t p = t.size(); !frontier.empty(); ++p) {
    Constraint c = cyl.at(p);
    std::vector<Node> next;
    for (const auto& u : frontier)
      for (const auto& v : tree.childValues(u))
        if (c.contains(v)) next.push_back(append(u, v));
    if (!next.empty()) deepest = p + 1;
    frontier = std::move(next);
  }
  r.hi = value(deepest + 1);
  return r;
}

inline ValueRange firstHitRange(const FirstHitLeaf& l, const Cylinder& cyl) {
  std::optional<Nat> lo, hi;
  bool unbounded = false;
  auto note = [&](const Nat& v) {
    if (!lo || v < *lo) lo = v;
    if (!hi || v > *hi) hi = v;
  };
  auto canHitAvoid = [&](const Constraint& c) {
    bool hit = false;
    for (const auto& a : l.hits) hit = hit || c.contains(a);
    return std::pair{hit, c.hasMemberOutside(l.hits)};
  };
  const std::size_t uniform = std::max(cyl.uniformFrom(), l.start);
  bool reachable = true;
  for (std::size_t i = l.start; i < uniform && reachable; ++i) {
    if (i < cyl.stem.size()) {
      if (l.hits.count(cyl.stem[i])) {
        note(Nat(i + 1) + l.offset);
        reachable = false;
      }
      continue;
    }
    auto [hit, avoid] = canHitAvoid(cyl.at(i));
    if (hit) note(Nat(i + 1) + l.offset);
    reachable = avoid;
  }
  if (reachable) {
    auto [hit, avoid] = canHitAvoid(cyl.at(uniform));
    if (hit) note(Nat(uniform + 1) + l.offset);
    if (avoid) note(l.dflt);
    if (hit && avoid) unbounded = true;
  }
  ValueRange r{*lo, hi};
  if (unbounded) r.hi.reset();
  return r;
}

inline ValueRange leafRange(const Leaf& leaf, const Cylinder& cyl) {
  return std::visit(
      [&](const auto& l) -> ValueRange {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ConstLeaf>) {
          return {l.value, l.value};
        } else if constexpr (std::is_same_v<T, ExitLeaf>) {
          return exitRange(l, cyl);
        } else if constexpr (std::is_same_v<T, FirstHitLeaf>) {
          return firstHitRange(l, cyl);
        } else {
          auto inner = leafRange(*l.inner, cyl);
          auto th = [&](const Nat& v) { return v >= l.cutoff ? Nat(1) : Nat(0); };
          return {th(inner.lo), inner.hi ? th(*inner.hi) : Nat(1)};
        }
      },
      leaf.v);
}

inline std::optional<ValueRange> codeRange(const ChallengeCode& c, Cylinder& cyl) {
  if (c.isLeaf()) return leafRange(c.asLeaf(), cyl);
  const auto& q = c.asQuery();
  if (q.coordinate < cyl.stem.size())
    return codeRange(q.children[classify(q.partition, cyl.stem[q.coordinate])], cyl);
  Constraint before = cyl.at(q.coordinate);
  bool had = cyl.constraints.count(q.coordinate) > 0;
  std::optional<ValueRange> acc;
  for (std::size_t i = 0; i < q.partition.size(); ++i) {
    Constraint narrowed = before.with(q.partition[i]);
    if (narrowed.empty()) continue;
    cyl.constraints.insert_or_assign(q.coordinate, narrowed);
    auto r = codeRange(q.children[i], cyl);
    if (!r) continue;
    if (!acc) {
      acc = r;
    } else {
      acc->lo = std::min(acc->lo, r->lo);
      if (!acc->hi || !r->hi) acc->hi.reset();
      else acc->hi = std::max(*acc->hi, *r->hi);
    }
  }
  if (had) cyl.constraints.insert_or_assign(q.coordinate, before);
  else cyl.constraints.erase(q.coordinate);
  return acc;
}

}  // namespace detail

/// Exact range of c over every x in the (constrained) cylinder.
inline ValueRange rangeOverCylinder(const ChallengeCode& c, Cylinder cyl) {
  auto r = detail::codeRange(c, cyl);
  if (!r) throw DomainError("InvalidInput", "empty cylinder");
  return *r;
}

inline ValueRange rangeOverCylinder(const ChallengeCode& c, const Node& t) {
  return rangeOverCylinder(c, Cylinder{t, {}, std::nullopt});
}

/// Greatest lower bound of c over all x extending t.
inline Nat infOverCylinder(const ChallengeCode& c, const Node& t) { return rangeOverCylinder(c, t).lo; }

/// The value of c when it is constant on [t]; nullopt ("undetermined") otherwise.
inline std::optional<Nat> determinedValue(const ChallengeCode& c, const Node& t) {
  auto r = rangeOverCylinder(c, t);
  if (r.constant()) return r.lo;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Witnesses

/// A represented point of the cylinder attaining the minimum of c over it.
/// Enumerates one value per equivalence class at each position up to the
/// uniform horizon, then completes either along a spine or with a value
/// that no tree, class or hit set mentions.
inline std::pair<EventuallyPeriodicSeq, Nat> minimizingWitness(const ChallengeCode& c, const Cylinder& cyl,
                                                               std::size_t maxCandidates = 200000) {
  const std::size_t depth = std::max(cyl.uniformFrom(), structuralHorizon(c)) + 1;
  auto spines = allSpines(c);
  Distinctions global;
  for (std::size_t p = 0; p <= depth; ++p) global.merge(distinctionsAt(c, p));
  std::optional<std::pair<EventuallyPeriodicSeq, Nat>> best;
  std::size_t visited = 0;
  auto consider = [&](const EventuallyPeriodicSeq& x) {
    for (std::size_t p = 0; p < cyl.stem.size(); ++p)
      if (x.at(p) != cyl.stem[p]) return;
    for (const auto& [p, k] : cyl.constraints)
      if (!k.contains(x.at(p))) return;
    if (cyl.alphabet)
      for (std::size_t p = 0; p < x.prefix().size() + x.period().size(); ++p)
        if (std::find(cyl.alphabet->begin(), cyl.alphabet->end(), x.at(p)) == cyl.alphabet->end()) return;
    Nat v = evalCode(c, x);
    if (!best || v < best->second) best.emplace(x, v);
  };
  std::function<void(Node&)> rec = [&](Node& s) {
    if (++visited > maxCandidates) throw DomainError("BoundExceeded", "witness enumeration too large");
    if (s.size() >= depth) {
      for (const auto& sp : spines)
        if (isPrefix(s, sp.take(s.size()))) consider(sp);
      if (cyl.alphabet) {
        for (const auto& a : *cyl.alphabet) consider(EventuallyPeriodicSeq(s, {a}));
      } else {
        consider(EventuallyPeriodicSeq(s, {global.ordinaryRep(0, 0)}));
      }
      return;
    }
    std::vector<Nat> reps;
    if (cyl.alphabet) {
      reps = *cyl.alphabet;
    } else {
      Distinctions d = distinctionsAt(c, s.size());
      if (auto it = cyl.constraints.find(s.size()); it != cyl.constraints.end())
        for (const auto& k : it->second.classes()) d.absorb(k);
      reps = d.representatives(0);
    }
    for (const auto& v : reps) {
      if (!cyl.at(s.size()).contains(v)) continue;
      s.push_back(v);
      rec(s);
      s.pop_back();
    }
  };
  Node s = cyl.stem;
  rec(s);
  if (!best) throw DomainError("InvalidInput", "no represented point in cylinder");
  return *best;
}

// ---------------------------------------------------------------------------
// Coordinate specialization

namespace detail {

inline Leaf specializeLeaf(const Leaf& leaf, const Nat& n) {
  return std::visit(
      [&](const auto& l) -> Leaf {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, ConstLeaf>) {
          return Leaf{l};
        } else if constexpr (std::is_same_v<T, ExitLeaf>) {
          if (!l.tree.contains({n})) return Leaf{ConstLeaf{Nat(1 + l.shift) + l.offset}};
          return Leaf{ExitLeaf{l.tree.below(n), l.dflt, l.offset, l.shift + 1}};
        } else if constexpr (std::is_same_v<T, FirstHitLeaf>) {
          if (l.start == 0 && l.hits.count(n)) return Leaf{ConstLeaf{Nat(1) + l.offset}};
          return Leaf{FirstHitLeaf{l.hits, l.start == 0 ? 0 : l.start - 1, l.offset + 1, l.dflt}};
        } else {
          return Leaf{ThreshLeaf{std::make_shared<const Leaf>(specializeLeaf(*l.inner, n)), l.cutoff}};
        }
      },
      leaf.v);
}

inline ChallengeCode specialize(const ChallengeCode& c, const Nat& n) {
  if (c.isLeaf()) return ChallengeCode::leaf(specializeLeaf(c.asLeaf(), n));
  const auto& q = c.asQuery();
  if (q.coordinate == 0) return specialize(q.children[classify(q.partition, n)], n);
  std::vector<ChallengeCode> kids;
  for (const auto& ch : q.children) kids.push_back(specialize(ch, n));
  return ChallengeCode::query(q.coordinate - 1, q.partition, std::move(kids));
}

}  // namespace detail

/// c_n with c_n(x) = g.base(<n>^x).
inline ChallengeCode coordinateCode(const FunctionFamilyCode& g, const Nat& n) {
  return detail::specialize(g.base, n);
}

// ---------------------------------------------------------------------------
// Domination of Exit([[a]])

struct DominationCounterexample {
  Node cylinder;        // a|l
  Nat excluded;         // a(l): the deviation class is omega minus {a(l)}
  std::size_t level;    // l; every x in the class has exit l+1
  Nat infimum;          // inf of c over the deviation class (< l+1)
  EventuallyPeriodicSeq witness;
};

/// Holds or refutes c(x) >= Exit([[a]])(x) for every x leaving [[a]].
/// Scans deviation levels until the slack inf - (l+1) repeats with the
/// combined spine period past the structural horizon.
inline std::variant<bool, DominationCounterexample> checkDominatesExit(const ChallengeCode& c,
                                                                       const PresentedTree& tree,
                                                                       std::size_t maxLevel = 4096) {
  if (tree.spines().size() != 1 || !tree.extraNodes().empty())
    throw DomainError("InvalidInput", "domination check expects the chain of a single sequence");
  const auto& a = tree.spines().front();
  std::size_t window = a.period().size();
  for (const auto& s : allSpines(c)) window = std::lcm(window, s.period().size());
  const std::size_t stable = structuralHorizon(c) + a.prefix().size() + 1;
  std::vector<Nat> slack;
  for (std::size_t l = 0; l <= maxLevel; ++l) {
    Cylinder cyl{a.take(l), {}, std::nullopt};
    cyl.constraints.emplace(l, Constraint({NatClass::allExcept({a.at(l)})}));
    Nat inf = rangeOverCylinder(c, cyl).lo;
    if (inf < l + 1) {
      auto w = minimizingWitness(c, cyl);
      return DominationCounterexample{cyl.stem, a.at(l), l, inf, w.first};
    }
    slack.push_back(inf - (l + 1));
    if (l + 1 >= stable + 2 * window) {
      bool repeats = true;
      for (std::size_t i = 0; i < window && repeats; ++i)
        repeats = slack[l - i] == slack[l - i - window];
      if (repeats) return true;
    }
  }
  throw DomainError("BoundExceeded", "domination slack did not stabilize");
}

}  // namespace baire
