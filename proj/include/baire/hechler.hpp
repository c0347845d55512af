#pragma once

// Conditions (stem, side) ordered by "extend the stem to the right of the
// side condition, strengthen the side condition", the A-avoiding variant,
// dense-set extension, and the fusion building a point x with
// f_a(x)(i) = g(x)(i) for i < N together with a re-checkable certificate.

#include <deque>
#include <string>
#include <vector>

#include "baire/codes.hpp"
#include "baire/encode.hpp"
#include "baire/reach.hpp"

namespace baire {

struct Condition {
  Node stem;
  HFun side;
};

/// t2 extends t1 and every new entry is at least h at its prefix.
inline bool extendsRightOf(const Node& t2, const Node& t1, const HFun& h) {
  if (!isPrefix(t1, t2)) return false;
  for (std::size_t i = t1.size(); i < t2.size(); ++i)
    if (t2[i] < h(truncate(t2, i))) return false;
  return true;
}

inline bool leqH(const Condition& p2, const Condition& p1) {
  return extendsRightOf(p2.stem, p1.stem, p1.side) && hGeq(p2.side, p1.side);
}

inline bool leqHA(const Condition& p2, const Condition& p1, const ASet& A) {
  if (!leqH(p2, p1)) return false;
  for (std::size_t i = p1.stem.size(); i < p2.stem.size(); ++i)
    if (A.contains(p2.stem[i])) return false;
  return true;
}

/// U = { (t, h) : stems accepts t and h >= hFloor }.
struct DenseSetSpec {
  QuotientAutomaton stems;
  HFun hFloor;

  /// Density: an accepting state is reachable from every state through
  /// infinite classes.
  void validate() const {
    stems.validate();
    auto rank = stateRanks(stems);
    for (std::size_t q = 0; q < rank.size(); ++q)
      if (!rank[q]) throw DomainError("InvalidInput", "dense set is not dense: state " + std::to_string(q) + " is unreachable");
  }

  bool contains(const Condition& p) const { return stems.accepts(p.stem) && hGeq(p.side, hFloor); }
};

struct ToyModel {
  std::vector<DenseSetSpec> denseSets;
  FunctionFamilyCode g;
};

/// Some p' <=^A p lying in U: the stem descends ranks inside U's automaton,
/// the side condition absorbs U's floor.
inline Condition extendIntoDense(const Condition& p, const DenseSetSpec& u, const ASet& A, const Nat& bound) {
  if (u.contains(p)) return p;
  Node t = findExtension(u.stems, p.stem, A, p.side, bound);
  return {t, p.side.join(u.hFloor)};
}

// ---------------------------------------------------------------------------
// Determination

/// Shortest (then least) extension s of t to the right of h, avoiding A,
/// on whose cylinder c is constant. Children are one representative per
/// class of values c can distinguish at that position.
inline Node determiningExtension(const ChallengeCode& c, const Node& t, const HFun& h, const ASet& A,
                                 std::size_t maxDepth, std::size_t maxNodes) {
  std::deque<Node> work{t};
  std::size_t visited = 0;
  while (!work.empty()) {
    Node s = std::move(work.front());
    work.pop_front();
    if (determinedValue(c, s)) return s;
    if (++visited > maxNodes) break;
    if (s.size() - t.size() >= maxDepth) continue;
    Distinctions d = distinctionsAt(c, s.size());
    Nat floor = h(s);
    std::set<Nat> children;
    for (const auto& v : d.specials)
      if (v >= floor && !A.contains(v)) children.insert(v);
    for (std::uint64_t r = 0; r < d.modulus; ++r) {
      Nat v = d.ordinaryRep(r, floor);
      while (A.contains(v)) v += d.modulus;
      children.insert(v);
    }
    for (const auto& v : children) work.push_back(append(s, v));
  }
  throw DomainError("DeterminationFailed", "no extension of " + toString(t) + " within the search bounds decides the value");
}

// ---------------------------------------------------------------------------
// Fusion

struct FusionBounds {
  Nat witnessBound = 1000000;
  std::size_t determineDepth = 6;
  std::size_t determineNodes = 20000;
};

enum class MoveKind { Dense, Determine, Ensure, Strategy, Bump };

inline const char* toString(MoveKind k) {
  switch (k) {
    case MoveKind::Dense: return "dense";
    case MoveKind::Determine: return "determine";
    case MoveKind::Ensure: return "ensure";
    case MoveKind::Strategy: return "strategy";
    default: return "bump";
  }
}

/// One appended stem entry. `tag` is the dense-set index or the coordinate.
struct FusionMove {
  Nat value;
  MoveKind kind;
  Nat floor;
  std::size_t tag;
};

struct CoordinateRecord {
  std::size_t i;
  Nat m;
  std::size_t determinedAt;  // stem length deciding coordinate i
  std::size_t hitPosition;   // index of the bump carrying m
  bool ensured = false;      // decided by a game strategy, not by the cylinder
};

/// The side condition joins the constant `level` once the stem has length
/// `stemLength`.
struct SideRaise {
  std::size_t stemLength;
  Nat level;
};

struct DenseHitRecord {
  std::size_t index;
  std::size_t stemLength;
};

struct FusionCertificate {
  Node xPrefix;
  std::vector<CoordinateRecord> coordinates;
  std::vector<DenseHitRecord> denseHits;
  std::vector<SideRaise> raises;
  std::vector<FusionMove> moves;
  Nat filler = 0;  // the completed point is xPrefix followed by filler forever
};

inline EventuallyPeriodicSeq completedX(const FusionCertificate& cert) { return {cert.xPrefix, {cert.filler}}; }

namespace detail {

/// Least value outside A that is at least `floor`.
inline Nat leastOutside(const ASet& A, Nat floor) {
  while (A.contains(floor)) ++floor;
  return floor;
}

}  // namespace detail

/// Stage k hits dense set k (if any), then decides coordinate k of g and
/// bumps the stem with the least e in A with eta(e) = m_k above the floor,
/// so the (k+1)-th A-entry of x carries m_k.
inline FusionCertificate fuse(const EventuallyPeriodicSeq& a, const ToyModel& model, std::size_t n,
                              const FusionBounds& bounds = {}) {
  ASet A(a);
  for (const auto& u : model.denseSets) u.validate();
  FusionCertificate cert;
  Condition p{{}, HFun{}};
  auto record = [&](const Node& before, const Node& after, MoveKind kind, std::size_t tag) {
    for (std::size_t i = before.size(); i < after.size(); ++i)
      cert.moves.push_back({after[i], kind, p.side(truncate(after, i)), tag});
  };
  const std::size_t stages = std::max(n, model.denseSets.size());
  for (std::size_t k = 0; k < stages; ++k) {
    if (k < model.denseSets.size()) {
      const auto& u = model.denseSets[k];
      Condition next = extendIntoDense(p, u, A, bounds.witnessBound);
      record(p.stem, next.stem, MoveKind::Dense, k);
      p = next;
      if (!hGeq(p.side, u.hFloor)) p.side = p.side.join(u.hFloor);
      cert.denseHits.push_back({k, p.stem.size()});
    }
    if (k < n) {
      auto ck = coordinateCode(model.g, k);
      Node s = determiningExtension(ck, p.stem, p.side, A, bounds.determineDepth, bounds.determineNodes);
      record(p.stem, s, MoveKind::Determine, k);
      p.stem = s;
      Nat m = *determinedValue(ck, s);
      Nat floor = p.side(s);
      Nat e = A.leastWithEta(m, floor);
      cert.moves.push_back({e, MoveKind::Bump, floor, k});
      cert.coordinates.push_back({k, m, s.size(), s.size()});
      p.stem.push_back(e);
    }
  }
  cert.xPrefix = p.stem;
  cert.filler = detail::leastOutside(A, p.side.supremum());
  return cert;
}

// ---------------------------------------------------------------------------
// Independent checking

struct CertificateVerdict {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Replays the certificate against (a, model, n) without any search:
/// floors are recomputed from the dense sets hit so far, avoidance and
/// eta values are tested directly, dense hits are run through the
/// automata, and f_a(x)(i) = g(x)(i) is evaluated on the completed point.
inline CertificateVerdict checkCertificate(const EventuallyPeriodicSeq& a, const ToyModel& model, std::size_t n,
                                           const FusionCertificate& cert) {
  CertificateVerdict v;
  ASet A(a);
  if (cert.moves.size() != cert.xPrefix.size()) {
    v.fail("move list and stem differ in length");
    return v;
  }
  HFun side;
  std::size_t nextHit = 0;
  std::size_t nextRaise = 0;
  std::size_t bumps = 0;
  auto applyHits = [&](std::size_t len) {
    while (nextRaise < cert.raises.size() && cert.raises[nextRaise].stemLength == len)
      side = side.join(HFun::constant(cert.raises[nextRaise++].level));
    while (nextHit < cert.denseHits.size() && cert.denseHits[nextHit].stemLength == len) {
      const auto& hit = cert.denseHits[nextHit++];
      if (hit.index >= model.denseSets.size()) {
        v.fail("dense hit names unknown set " + std::to_string(hit.index));
        continue;
      }
      const auto& u = model.denseSets[hit.index];
      if (!u.stems.accepts(truncate(cert.xPrefix, len)))
        v.fail("dense set " + std::to_string(hit.index) + " does not accept the stem of length " + std::to_string(len));
      side = side.join(u.hFloor);
    }
  };
  for (std::size_t i = 0; i < cert.moves.size(); ++i) {
    applyHits(i);
    const auto& mv = cert.moves[i];
    Node prefix = truncate(cert.xPrefix, i);
    Nat floor = side(prefix);
    if (mv.value != cert.xPrefix[i]) v.fail("move " + std::to_string(i) + " disagrees with the stem");
    if (mv.floor != floor) v.fail("move " + std::to_string(i) + " claims floor " + mv.floor.str() + ", replay gives " + floor.str());
    if (mv.value < floor) v.fail("move " + std::to_string(i) + " lies left of the side condition");
    bool inA = A.contains(mv.value);
    if (mv.kind == MoveKind::Bump) {
      if (!inA) {
        v.fail("bump " + std::to_string(i) + " is not in A");
        continue;
      }
      if (bumps >= cert.coordinates.size() || cert.coordinates[bumps].hitPosition != i)
        v.fail("bump " + std::to_string(i) + " is not the recorded hit position");
      else if (A.eta(mv.value) != cert.coordinates[bumps].m)
        v.fail("bump " + std::to_string(i) + " carries the wrong eta value");
      ++bumps;
    } else if (inA) {
      v.fail("move " + std::to_string(i) + " enters A");
    }
  }
  applyHits(cert.moves.size());
  if (nextHit != cert.denseHits.size()) v.fail("dense hits out of order");
  if (nextRaise != cert.raises.size()) v.fail("side raises out of order");
  std::set<std::size_t> hitSets;
  for (const auto& h : cert.denseHits) hitSets.insert(h.index);
  if (hitSets.size() != model.denseSets.size()) v.fail("some dense set is never hit");
  if (A.contains(cert.filler)) v.fail("filler lies in A");
  if (cert.filler < side.supremum()) v.fail("filler lies left of the final side condition");
  if (cert.coordinates.size() != n) v.fail("expected " + std::to_string(n) + " coordinates");

  auto x = completedX(cert);
  for (std::size_t i = 0; i < cert.coordinates.size(); ++i) {
    const auto& rec = cert.coordinates[i];
    if (rec.i != i) v.fail("coordinates out of order");
    auto ci = coordinateCode(model.g, i);
    if (rec.determinedAt > cert.xPrefix.size()) {
      v.fail("coordinate " + std::to_string(i) + " decided beyond the stem");
    } else if (rec.ensured) {
      // Replay other completions to the right of the final side condition.
      Nat floor = side.supremum();
      Node head = truncate(cert.xPrefix, rec.determinedAt);
      for (std::uint64_t k = 0; k < 12; ++k) {
        Node tail{floor + k, floor + 2 * k + 1, floor + (k * 7) % 5};
        EventuallyPeriodicSeq y(concat(head, tail), {floor + k % 3});
        if (evalCode(ci, y) != rec.m) {
          v.fail("coordinate " + std::to_string(i) + " is not ensured by the recorded condition");
          break;
        }
      }
    } else if (determinedValue(ci, truncate(cert.xPrefix, rec.determinedAt)) != std::optional<Nat>(rec.m)) {
      v.fail("coordinate " + std::to_string(i) + " is not decided at the recorded stem");
    }
    Nat fa = encodeF(A, x, i);
    Nat gx = evalCode(model.g.base, x.prepend({Nat(i)}));
    if (fa != rec.m || gx != rec.m)
      v.fail("coordinate " + std::to_string(i) + ": f_a(x) = " + fa.str() + ", g(x) = " + gx.str() + ", claimed " + rec.m.str());
  }
  return v;
}

}  // namespace baire
