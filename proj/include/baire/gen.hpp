#pragma once

// Seeded random instances for property tests, the acceptance suite and the
// `gen` command. Every generator draws only from the engine it is given, so
// a seed fixes the instance.

#include <random>
#include <vector>

#include "baire/codes.hpp"
#include "baire/crrel.hpp"
#include "baire/hechler.hpp"
#include "baire/reach.hpp"

namespace baire::gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

inline Node node(Rng& rng, std::size_t maxLen, std::uint64_t maxEntry) {
  Node t(below(rng, maxLen + 1));
  for (auto& v : t) v = below(rng, maxEntry + 1);
  return t;
}

inline EventuallyPeriodicSeq sequence(Rng& rng, std::size_t maxPrefix, std::size_t maxPeriod, std::uint64_t maxEntry) {
  Node p = node(rng, maxPrefix, maxEntry);
  Node q(1 + below(rng, maxPeriod));
  for (auto& v : q) v = below(rng, maxEntry + 1);
  return {p, q};
}

/// A partition from a small menu: singleton split, parity, residues mod 3
/// with a finite exception, or the trivial partition.
inline ClassPartition partition(Rng& rng, std::uint64_t maxEntry) {
  switch (below(rng, 4)) {
    case 0: {
      Nat k = below(rng, maxEntry + 1);
      return {NatClass::finite({k}), NatClass::allExcept({k})};
    }
    case 1:
      return {NatClass::residue(2, {0}), NatClass::residue(2, {1})};
    case 2: {
      Nat k = below(rng, maxEntry + 1);
      NatClass a = NatClass::residue(3, {0});
      NatClass b = NatClass::residue(3, {1, 2});
      (a.contains(k) ? a : b).exclude.push_back(k);
      return {a, b, NatClass::finite({k})};
    }
    default:
      return {NatClass::everything()};
  }
}

inline PresentedTree tree(Rng& rng, std::uint64_t maxEntry) {
  std::vector<Node> extra;
  if (below(rng, 3) == 0) extra.push_back(node(rng, 3, maxEntry));
  return PresentedTree({sequence(rng, 2, 2, maxEntry)}, extra);
}

inline Leaf leaf(Rng& rng, std::uint64_t maxEntry, bool bits) {
  auto base = [&]() -> Leaf {
    switch (below(rng, 3)) {
      case 0:
        return Leaf{ConstLeaf{Nat(below(rng, 5))}};
      case 1:
        return Leaf{ExitLeaf{tree(rng, maxEntry), Nat(below(rng, 5)), Nat(below(rng, 3)), 0}};
      default: {
        std::set<Nat> hits;
        for (int i = 0; i < 2; ++i) hits.insert(Nat(below(rng, maxEntry + 1)));
        return Leaf{FirstHitLeaf{hits, below(rng, 2), Nat(below(rng, 2)), Nat(below(rng, 5))}};
      }
    }
  };
  Leaf l = base();
  if (!bits) return l;
  if (auto* k = std::get_if<ConstLeaf>(&l.v)) return Leaf{ConstLeaf{k->value % 2}};
  return Leaf{ThreshLeaf{std::make_shared<const Leaf>(l), Nat(1 + below(rng, 3))}};
}

/// A code with at most `levels` nested queries on coordinates < maxCoord.
inline ChallengeCode code(Rng& rng, std::size_t levels, std::size_t maxCoord, std::uint64_t maxEntry,
                          bool bits = false) {
  if (levels == 0 || below(rng, 3) == 0) return ChallengeCode::leaf(leaf(rng, maxEntry, bits));
  auto p = partition(rng, maxEntry);
  std::vector<ChallengeCode> kids;
  for (std::size_t i = 0; i < p.size(); ++i) kids.push_back(code(rng, levels - 1, maxCoord, maxEntry, bits));
  return ChallengeCode::query(below(rng, maxCoord), p, kids);
}

inline FiniteRelation relation(Rng& rng, std::size_t maxSide) {
  FiniteRelation r;
  for (std::size_t i = 1 + below(rng, maxSide); i > 0; --i) r.challenges.push_back("c" + std::to_string(i));
  for (std::size_t i = 1 + below(rng, maxSide); i > 0; --i) r.responses.push_back("r" + std::to_string(i));
  for (const auto& c : r.challenges)
    for (const auto& s : r.responses)
      if (below(rng, 3) == 0) r.meets.insert({c, s});
  return r;
}

/// A relation B with a witnessed morphism A -> B: B's challenges are mapped
/// into A and B's meets are closed so that the implication holds.
inline std::pair<FiniteRelation, MorphismWitness> morphicImage(Rng& rng, const FiniteRelation& a, std::size_t maxSide) {
  FiniteRelation b = relation(rng, maxSide);
  MorphismWitness w;
  for (const auto& c : b.challenges) w.phiMinus[c] = a.challenges[below(rng, a.challenges.size())];
  for (const auto& r : a.responses) w.phiPlus[r] = b.responses[below(rng, b.responses.size())];
  for (const auto& c : b.challenges)
    for (const auto& r : a.responses)
      if (a.met(w.phiMinus[c], r)) b.meets.insert({c, w.phiPlus[r]});
  return {b, w};
}

/// An automaton with at most maxStates states and maxClasses classes per
/// state; class menus mix finite and infinite classes.
inline QuotientAutomaton automaton(Rng& rng, std::size_t maxStates, std::size_t maxClasses) {
  QuotientAutomaton s;
  std::size_t n = 1 + below(rng, maxStates);
  for (std::size_t q = 0; q < n; ++q) {
    ClassPartition p;
    std::size_t want = 1 + below(rng, maxClasses);
    switch (want) {
      case 1:
        p = {NatClass::everything()};
        break;
      case 2:
        if (below(rng, 2)) {
          p = {NatClass::residue(2, {0}), NatClass::residue(2, {1})};
        } else {
          std::vector<Nat> f;
          for (std::uint64_t v = 0, k = 1 + below(rng, 3); v < k; ++v) f.emplace_back(v);
          p = {NatClass::finite(f), NatClass::allExcept(f)};
        }
        break;
      case 3: {
        Nat k = below(rng, 3);
        NatClass a = NatClass::residue(2, {0}), b = NatClass::residue(2, {1});
        (a.contains(k) ? a : b).exclude.push_back(k);
        p = {NatClass::finite({k}), a, b};
        break;
      }
      default: {
        NatClass a = NatClass::residue(2, {0}), b = NatClass::residue(2, {1});
        a.exclude = {0};
        b.exclude = {1};
        p = {NatClass::finite({0}), NatClass::finite({1}), a, b};
        break;
      }
    }
    AutomatonState st{p, {}, below(rng, 4) == 0};
    for (std::size_t c = 0; c < p.size(); ++c) st.next.push_back(below(rng, n));
    s.states.push_back(st);
  }
  s.start = 0;
  return s;
}

/// Leaves valued in {0,...,4}: constants and thresholded exit or first-hit
/// leaves. Small values keep the eta fibres used by fusion at shallow levels.
inline ChallengeCode smallValuedCode(Rng& rng, std::size_t levels, std::size_t maxCoord, std::uint64_t maxEntry) {
  if (levels == 0 || below(rng, 3) == 0) {
    if (below(rng, 2)) return ChallengeCode::constant(below(rng, 5));
    return ChallengeCode::leaf(leaf(rng, maxEntry, true));
  }
  auto p = partition(rng, maxEntry);
  std::vector<ChallengeCode> kids;
  for (std::size_t i = 0; i < p.size(); ++i) kids.push_back(smallValuedCode(rng, levels - 1, maxCoord, maxEntry));
  return ChallengeCode::query(below(rng, maxCoord), p, kids);
}

/// A stem automaton in which every state is ranked, with a small floor.
inline DenseSetSpec denseSet(Rng& rng) {
  for (;;) {
    auto s = automaton(rng, 4, 4);
    auto rank = stateRanks(s);
    bool dense = true;
    for (const auto& r : rank) dense = dense && r.has_value();
    if (!dense) continue;
    HFun floor;
    if (below(rng, 2)) floor = HFun::constant(below(rng, 4));
    else floor = HFun{{LevelTable{{{below(rng, 4), Nat(below(rng, 4))}}, 0}}};
    return {s, floor};
  }
}

inline ToyModel toyModel(Rng& rng, std::size_t maxDense) {
  std::vector<DenseSetSpec> dense;
  for (std::size_t i = below(rng, maxDense + 1); i > 0; --i) dense.push_back(denseSet(rng));
  return ToyModel{std::move(dense), FunctionFamilyCode{smallValuedCode(rng, 2, 3, 4)}};
}

}  // namespace baire::gen
