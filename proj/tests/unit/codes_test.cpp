#include <functional>

#include <gtest/gtest.h>

#include "baire/codes.hpp"
#include "baire/gen.hpp"

using namespace baire;

namespace {

Node node(std::initializer_list<int> xs) {
  Node t;
  for (int v : xs) t.emplace_back(v);
  return t;
}

const auto zero = EventuallyPeriodicSeq::constant(0);
const PresentedTree zeroChain = PresentedTree::chain(zero);

// Represented extensions of t: up to `extra` more entries <= maxEntry, then a
// constant tail <= maxEntry or the remainder of any spine of the code.
void forEachExtension(const ChallengeCode& c, const Node& t, std::size_t extra, std::uint64_t maxEntry,
                      const std::function<void(const EventuallyPeriodicSeq&)>& f) {
  auto spines = allSpines(c);
  std::function<void(Node&, std::size_t)> rec = [&](Node& s, std::size_t left) {
    for (std::uint64_t v = 0; v <= maxEntry; ++v) f(EventuallyPeriodicSeq(s, {Nat(v)}));
    for (const auto& sp : spines)
      if (sp.take(s.size()) == s) f(sp);
    if (left == 0) return;
    for (std::uint64_t v = 0; v <= maxEntry; ++v) {
      s.emplace_back(v);
      rec(s, left - 1);
      s.pop_back();
    }
  };
  Node s = t;
  rec(s, extra);
}

}  // namespace

TEST(EvalCode, Examples) {
  EXPECT_EQ(evalCode(ChallengeCode::constant(5), zero), 5);
  auto e = ChallengeCode::exit(zeroChain);
  EXPECT_EQ(evalCode(e, EventuallyPeriodicSeq(node({0, 0, 5}), node({0}))), 3);
  EXPECT_EQ(evalCode(e, zero), 0);
}

TEST(EvalCode, FirstHitAndThresh) {
  auto f = ChallengeCode::firstHit({Nat(4)}, 1, 2, 9);
  EXPECT_EQ(evalCode(f, EventuallyPeriodicSeq(node({4, 0, 4}), node({0}))), 5);
  EXPECT_EQ(evalCode(f, EventuallyPeriodicSeq(node({4}), node({0}))), 9);
  auto t = ChallengeCode::thresh(Leaf{ExitLeaf{zeroChain, 5, 0, 0}}, 2);
  EXPECT_EQ(evalCode(t, EventuallyPeriodicSeq(node({3}), node({0}))), 0);
  EXPECT_EQ(evalCode(t, zero), 1);
}

TEST(InfOverCylinder, Examples) {
  auto e0 = ChallengeCode::exit(zeroChain);
  EXPECT_EQ(infOverCylinder(e0, node({})), 0);
  EXPECT_EQ(infOverCylinder(e0, node({5})), 1);
  EXPECT_EQ(infOverCylinder(ChallengeCode::exit(zeroChain, 0, 3), node({0, 5})), 5);
}

TEST(InfOverCylinder, SoundAndAttainedOnRandomCodes) {
  gen::Rng rng(101);
  for (int it = 0; it < 500; ++it) {
    auto c = gen::code(rng, 2, 3, 3);
    Node t = gen::node(rng, 3, 4);
    Nat inf = infOverCylinder(c, t);
    forEachExtension(c, t, 2, 5, [&](const EventuallyPeriodicSeq& x) { ASSERT_GE(evalCode(c, x), inf); });
    auto [w, v] = minimizingWitness(c, Cylinder{t, {}, std::nullopt});
    ASSERT_EQ(w.take(t.size()), t);
    ASSERT_EQ(evalCode(c, w), v);
    ASSERT_EQ(v, inf);
  }
}

TEST(DeterminedValue, Examples) {
  EXPECT_EQ(determinedValue(ChallengeCode::constant(5), node({})), 5);
  auto e0 = ChallengeCode::exit(zeroChain);
  EXPECT_EQ(determinedValue(e0, node({0, 5})), 2);
  EXPECT_FALSE(determinedValue(e0, node({0})).has_value());
}

TEST(DeterminedValue, HoldsOnSampledExtensions) {
  gen::Rng rng(202);
  int determined = 0;
  for (int it = 0; it < 500; ++it) {
    auto c = gen::code(rng, 2, 3, 3);
    Node t = gen::node(rng, 4, 4);
    auto v = determinedValue(c, t);
    if (!v) continue;
    ++determined;
    for (int k = 0; k < 100; ++k) {
      Node tail = gen::node(rng, 4, 6);
      EventuallyPeriodicSeq x(concat(t, tail), {Nat(gen::below(rng, 7))});
      ASSERT_EQ(evalCode(c, x), *v);
    }
  }
  EXPECT_GT(determined, 50);
}

TEST(CoordinateCode, Examples) {
  auto c0 = coordinateCode({ChallengeCode::constant(0)}, 7);
  EXPECT_EQ(determinedValue(c0, {}), 0);
  FunctionFamilyCode g{ChallengeCode::query(0, {NatClass::finite({0}), NatClass::allExcept({0})},
                                            {ChallengeCode::constant(1), ChallengeCode::constant(2)})};
  EXPECT_EQ(determinedValue(coordinateCode(g, 0), {}), 1);
  EXPECT_EQ(determinedValue(coordinateCode(g, 3), {}), 2);
}

TEST(CoordinateCode, AgreesWithPrependedEvaluation) {
  gen::Rng rng(303);
  for (int it = 0; it < 500; ++it) {
    FunctionFamilyCode g{gen::code(rng, 2, 3, 3)};
    Nat n = gen::below(rng, 6);
    auto cn = coordinateCode(g, n);
    for (int k = 0; k < 20; ++k) {
      auto x = gen::sequence(rng, 4, 2, 5);
      ASSERT_EQ(evalCode(cn, x), evalCode(g.base, x.prepend({n})));
    }
  }
}

TEST(CheckDominatesExit, Examples) {
  EXPECT_EQ(std::get<bool>(checkDominatesExit(ChallengeCode::exit(zeroChain), zeroChain)), true);
  EXPECT_EQ(std::get<bool>(checkDominatesExit(ChallengeCode::exit(zeroChain, 0, 2), zeroChain)), true);
  auto r = checkDominatesExit(ChallengeCode::constant(5), zeroChain);
  auto& ce = std::get<DominationCounterexample>(r);
  EXPECT_EQ(ce.cylinder, node({0, 0, 0, 0, 0}));
  EXPECT_EQ(ce.excluded, 0);
  EXPECT_EQ(*exitLevel(zeroChain, ce.witness), 6u);
  EXPECT_LT(evalCode(ChallengeCode::constant(5), ce.witness), 6);
}

TEST(CheckDominatesExit, VerdictsAgreeWithSampling) {
  gen::Rng rng(404);
  int held = 0;
  for (int it = 0; it < 200; ++it) {
    auto a = gen::sequence(rng, 2, 3, 3);
    auto T = PresentedTree::chain(a);
    auto leafFor = [&]() {
      if (gen::below(rng, 4) == 0) return ChallengeCode::constant(gen::below(rng, 6));
      auto s = gen::below(rng, 3) == 0 ? gen::sequence(rng, 2, 3, 3) : a;
      return ChallengeCode::exit(PresentedTree::chain(s), gen::below(rng, 3), gen::below(rng, 3));
    };
    auto c = gen::below(rng, 2) ? leafFor()
                                : ChallengeCode::query(gen::below(rng, 3), {NatClass::residue(2, {0}), NatClass::residue(2, {1})},
                                                       {leafFor(), leafFor()});
    auto r = checkDominatesExit(c, T);
    if (auto* ce = std::get_if<DominationCounterexample>(&r)) {
      auto l = exitLevel(T, ce->witness);
      ASSERT_TRUE(l.has_value());
      ASSERT_LT(evalCode(c, ce->witness), *l);
      continue;
    }
    ++held;
    for (int k = 0; k < 1000; ++k) {
      std::size_t dev = gen::below(rng, 12);
      Node p = a.take(dev);
      p.push_back(gen::below(rng, 6));
      auto x = EventuallyPeriodicSeq(concat(p, gen::node(rng, 3, 5)), {Nat(gen::below(rng, 6))});
      if (auto l = exitLevel(T, x)) ASSERT_GE(evalCode(c, x), *l);
    }
  }
  EXPECT_GT(held, 20);
}
