#include <gtest/gtest.h>

#include "baire/decode.hpp"
#include "baire/encode.hpp"
#include "baire/gen.hpp"

using namespace baire;

namespace {

Node node(std::initializer_list<int> xs) {
  Node t;
  for (int v : xs) t.emplace_back(v);
  return t;
}

const auto zero = EventuallyPeriodicSeq::constant(0);

ChallengeCode exitCode(const EventuallyPeriodicSeq& a, int k) { return ChallengeCode::exit(PresentedTree::chain(a), 0, k); }

DecodeParams params(std::size_t n) {
  DecodeParams p;
  p.targetLength = n;
  return p;
}

// B membership for Exit([[a]]) + k computed from the definition over
// extensions with entries <= 9 up to three levels below t plus the spine.
bool bruteInB(const EventuallyPeriodicSeq& a, int k, const Node& t) {
  auto T = PresentedTree::chain(a);
  Nat least = -1;
  bool any = false;
  std::function<void(Node&, int)> rec = [&](Node& s, int left) {
    for (int v = 0; v <= 9; ++v) {
      EventuallyPeriodicSeq x(s, {Nat(v)});
      auto e = exitLevel(T, x);
      Nat val = (e ? Nat(*e) : Nat(0)) + k;
      if (!any || val < least) least = val;
      any = true;
    }
    if (a.take(s.size()) == s) {
      Nat val = k;
      if (val < least) least = val;
    }
    if (left == 0) return;
    for (int v = 0; v <= 9; ++v) {
      s.emplace_back(v);
      rec(s, left - 1);
      s.pop_back();
    }
  };
  Node s = t;
  rec(s, 2);
  return least >= t.size();
}

std::set<Nat> setOf(std::initializer_list<int> xs) {
  std::set<Nat> s;
  for (int v : xs) s.insert(v);
  return s;
}

}  // namespace

TEST(InBSet, Examples) {
  auto g = exitCode(zero, 0);
  EXPECT_TRUE(inBSet(g, node({5})));
  EXPECT_FALSE(inBSet(g, node({0})));
  EXPECT_TRUE(inBSet(g, node({0, 5})));
}

TEST(InBSet, AgreesWithDefinitionOnSmallNodes) {
  auto a = EventuallyPeriodicSeq(node({1, 2}), node({3}));
  for (int k = 0; k <= 2; ++k) {
    auto g = exitCode(a, k);
    std::function<void(Node&)> rec = [&](Node& t) {
      ASSERT_EQ(inBSet(g, t), bruteInB(a, k, t)) << toString(t) << " k=" << k;
      if (t.size() == 3) return;
      for (int v = 0; v <= 4; ++v) {
        t.emplace_back(v);
        rec(t);
        t.pop_back();
      }
    };
    Node t;
    rec(t);
  }
}

TEST(DecodeFromDomination, Examples) {
  auto r = decodeFromDomination(exitCode(zero, 0), params(4));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].node, node({0, 0, 0, 0}));

  auto a = EventuallyPeriodicSeq(node({1, 2}), node({3}));
  r = decodeFromDomination(exitCode(a, 0), params(4));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].node, node({1, 2, 3, 3}));

  r = decodeFromDomination(exitCode(zero, 2), params(4));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].node, node({0, 0, 0, 0}));
  EXPECT_EQ(r[0].threshold, 2u);
}

TEST(DecodeFromDomination, RoundtripAndPostHocSoundness) {
  gen::Rng rng(12);
  for (int it = 0; it < 10; ++it) {
    auto a = gen::sequence(rng, 4, 4, 9);
    for (int k = 0; k <= 3; ++k) {
      auto g = exitCode(a, k);
      auto r = decodeFromDomination(g, params(16));
      ASSERT_EQ(r.size(), 1u);
      ASSERT_EQ(r[0].node, a.take(16));
      const auto& u = r[0].node;
      for (std::size_t l = r[0].threshold; l < u.size(); ++l) {
        ASSERT_FALSE(inBSet(g, truncate(u, l + 1)));
        for (int n = 0; n <= 16; ++n)
          if (Nat(n) != u[l]) ASSERT_TRUE(inBSet(g, append(truncate(u, l), n)));
      }
    }
  }
}

TEST(DecodeFromDomination, OffsetRaisesThresholdOnly) {
  gen::Rng rng(13);
  for (int it = 0; it < 10; ++it) {
    auto a = gen::sequence(rng, 3, 3, 9);
    std::size_t prev = 0;
    for (int k = 0; k <= 3; ++k) {
      auto r = decodeFromDomination(exitCode(a, k), params(12));
      ASSERT_EQ(r.size(), 1u);
      ASSERT_EQ(r[0].node, a.take(12));
      ASSERT_GE(r[0].threshold, prev);
      prev = r[0].threshold;
    }
  }
}

TEST(DecodeFromDomination, UninformativeCodesYieldNothingOrOverflow) {
  EXPECT_TRUE(decodeFromDomination(ChallengeCode::constant(100), params(4)).empty());
  std::vector<EventuallyPeriodicSeq> spines;
  for (int c = 0; c < 10; ++c) spines.push_back(EventuallyPeriodicSeq::constant(c));
  DecodeParams p = params(4);
  p.candidateBound = 8;
  try {
    decodeFromDomination(ChallengeCode::exit(PresentedTree(spines, {})), p);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), "CandidateOverflow");
  }
}

TEST(HorizDecode, Examples) {
  auto X = alphabetOf(3);
  auto hiddenOne = [](const Nat& z) { return z == 1; };
  auto r = horizDecode(ChallengeCode::firstHit(setOf({1})), X, hiddenOne, 4);
  EXPECT_EQ(r.stem, node({}));
  EXPECT_EQ(r.recovered, setOf({1}));

  auto shifted = ChallengeCode::query(0, {NatClass::finite({0}), NatClass::allExcept({0})},
                                      {ChallengeCode::firstHit(setOf({1}), 1, 0, 1), ChallengeCode::firstHit(setOf({1}))});
  r = horizDecode(shifted, X, hiddenOne, 4);
  EXPECT_EQ(r.stem, node({0}));
  EXPECT_EQ(r.recovered, setOf({1}));
  EXPECT_EQ(r.iterations, 2u);

  r = horizDecode(ChallengeCode::constant(0), alphabetOf(1), [](const Nat&) { return false; }, 2);
  EXPECT_EQ(r.stem, node({}));
  EXPECT_TRUE(r.recovered.empty());
}

TEST(HorizDecode, OracleFreeCandidatesContainTheAnswer) {
  auto X = alphabetOf(3);
  auto shifted = ChallengeCode::query(0, {NatClass::finite({0}), NatClass::allExcept({0})},
                                      {ChallengeCode::firstHit(setOf({1}), 1, 0, 1), ChallengeCode::firstHit(setOf({1}))});
  auto all = horizCandidates(shifted, X, 4);
  bool found = false;
  for (const auto& c : all) found = found || (c.stem == node({0}) && c.recovered == setOf({1}));
  EXPECT_TRUE(found);
}
