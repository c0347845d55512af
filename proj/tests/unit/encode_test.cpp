#include <algorithm>

#include <gtest/gtest.h>

#include "baire/encode.hpp"
#include "baire/gen.hpp"

using namespace baire;

namespace {

Node node(std::initializer_list<int> xs) {
  Node t;
  for (int v : xs) t.emplace_back(v);
  return t;
}

const ASet zeroA(EventuallyPeriodicSeq::constant(0));

// Cantor pairing by walking diagonals, independent of the closed form.
Nat slowPair(std::uint64_t u, std::uint64_t v) {
  std::uint64_t z = 0;
  for (std::uint64_t s = 0;; ++s)
    for (std::uint64_t j = 0; j <= s; ++j, ++z)
      if (s - j == u && j == v) return z;
}

}  // namespace

TEST(PrefixCode, Examples) {
  EXPECT_EQ(prefixCode({}), 2);
  EXPECT_EQ(prefixCode(node({0})), 6);
  EXPECT_EQ(prefixCode(node({0, 0, 0})), 303);
  auto chain = zeroA.chain(4);
  EXPECT_EQ(chain, (std::vector<Nat>{6, 24, 303, 46059}));
}

TEST(PrefixCode, PairingMatchesDiagonalWalk) {
  for (std::uint64_t u = 0; u < 20; ++u)
    for (std::uint64_t v = 0; v < 20; ++v) {
      ASSERT_EQ(cantorPair(u, v), slowPair(u, v));
      auto [a, b] = cantorUnpair(slowPair(u, v));
      ASSERT_EQ(a, u);
      ASSERT_EQ(b, v);
    }
}

TEST(PrefixCode, InjectiveIncreasingInvertible) {
  gen::Rng rng(7);
  std::set<Nat> seen;
  std::set<Node> nodes;
  for (int it = 0; it < 500; ++it) {
    Node t = gen::node(rng, 5, 9);
    Nat c = prefixCode(t);
    if (nodes.insert(t).second) ASSERT_TRUE(seen.insert(c).second);
    ASSERT_EQ(decodePrefixCode(c), t);
    for (std::size_t l = 0; l < t.size(); ++l) ASSERT_LT(prefixCode(truncate(t, l)), c);
  }
  EXPECT_FALSE(decodePrefixCode(4).has_value());
}

TEST(MemberA, Examples) {
  EXPECT_TRUE(memberA(zeroA, 24));
  EXPECT_FALSE(memberA(zeroA, 7));
  EXPECT_FALSE(memberA(zeroA, 2));
}

TEST(EtaValue, Examples) {
  EXPECT_EQ(etaValue(zeroA, 6), 0);
  EXPECT_EQ(etaValue(zeroA, 303), 1);
  EXPECT_EQ(etaValue(zeroA, 46059), 0);
  try {
    etaValue(zeroA, 7);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), "NotInA");
  }
}

TEST(EtaValue, FibresAreRich) {
  // Levels carrying eta value m, counted by unrolling the diagonal blocks.
  // Value m occurs once per block from block m + 1 on, so values up to 4
  // occur three times within 30 levels while value 5 needs 34.
  auto count = [](int m, int levels) {
    int c = 0, k = 0;
    for (int block = 1; k < levels; ++block)
      for (int j = 0; j < block && k < levels; ++j, ++k) {
        EXPECT_EQ(diagonalValue(k), j);
        c += j == m;
      }
    return c;
  };
  for (int m = 0; m <= 4; ++m) EXPECT_GE(count(m, 30), 3) << m;
  EXPECT_EQ(count(5, 30), 2);
  EXPECT_GE(count(5, 34), 3);
}

TEST(EncodeF, Examples) {
  auto z = EventuallyPeriodicSeq::constant(0);
  EventuallyPeriodicSeq x(node({6, 1, 24, 303}), node({1}));
  EXPECT_EQ(encodeF(z, x, 2), 1);
  EXPECT_EQ(encodeF(z, x, 5), 0);
  EXPECT_EQ(encodeF(z, EventuallyPeriodicSeq(node({24}), node({6})), 3), 0);
}

TEST(EncodeF, PeriodicHitsMatchUnrolledScan) {
  gen::Rng rng(8);
  auto chain = zeroA.chain(4);
  for (int it = 0; it < 300; ++it) {
    Node p, q;
    for (int i = gen::below(rng, 4); i > 0; --i) p.push_back(gen::below(rng, 2) ? chain[gen::below(rng, 4)] : Nat(gen::below(rng, 9)));
    for (int i = 1 + gen::below(rng, 3); i > 0; --i) q.push_back(gen::below(rng, 2) ? chain[gen::below(rng, 4)] : Nat(gen::below(rng, 9)));
    EventuallyPeriodicSeq x(p, q);
    std::vector<Nat> etas;
    for (std::size_t i = 0; i < 60; ++i)
      if (std::find(chain.begin(), chain.end(), x.at(i)) != chain.end()) etas.push_back(zeroA.eta(x.at(i)));
    for (std::size_t n = 0; n < 8; ++n) {
      Nat expect = n < etas.size() ? etas[n] : Nat(0);
      ASSERT_EQ(encodeF(zeroA, x, n), expect);
    }
  }
}

TEST(EncodeF, ContinuousAtHitPositions) {
  gen::Rng rng(9);
  auto chain = zeroA.chain(4);
  for (int it = 0; it < 300; ++it) {
    Node p;
    for (int i = 1 + gen::below(rng, 6); i > 0; --i) p.push_back(gen::below(rng, 2) ? chain[gen::below(rng, 4)] : Nat(gen::below(rng, 9)));
    EventuallyPeriodicSeq x(p, {chain[gen::below(rng, 4)]});
    for (std::size_t n = 0; n < 5; ++n) {
      auto pos = nthHitPosition(zeroA, x, n);
      ASSERT_TRUE(pos.has_value());
      EventuallyPeriodicSeq y(concat(x.take(*pos + 1), gen::node(rng, 3, 30)), {Nat(gen::below(rng, 30))});
      ASSERT_EQ(encodeF(zeroA, x, n), encodeF(zeroA, y, n));
    }
  }
}

TEST(HorizEncode, Examples) {
  std::set<Nat> one{1};
  EXPECT_EQ(horizEncode(one, EventuallyPeriodicSeq(node({0, 2, 1}), node({0}))), 3);
  EXPECT_EQ(horizEncode(one, EventuallyPeriodicSeq::constant(0)), 0);
  EXPECT_EQ(horizEncode(one, EventuallyPeriodicSeq({}, node({1}))), 1);
}

TEST(Recoverability, SmallSamplesRebuildThePrefix) {
  gen::Rng rng(10);
  for (int it = 0; it < 20; ++it) {
    auto a = gen::sequence(rng, 3, 4, 9);
    ASet A(a);
    auto chain = A.chain(12);
    std::vector<std::size_t> levels(12);
    for (std::size_t i = 0; i < 12; ++i) levels[i] = i;
    std::shuffle(levels.begin(), levels.end(), rng);
    levels.resize(5);
    std::size_t longest = 0;
    Node rebuilt;
    for (auto l : levels) {
      auto t = decodePrefixCode(chain[l]);
      ASSERT_TRUE(t.has_value());
      if (t->size() > longest) {
        longest = t->size();
        rebuilt = *t;
      }
    }
    for (auto l : levels) ASSERT_TRUE(isPrefix(*decodePrefixCode(chain[l]), rebuilt));
    ASSERT_EQ(rebuilt, a.take(longest));
  }
}

TEST(ASet, GuardStopsRunawayCodes) {
  ASet A(EventuallyPeriodicSeq::constant(0), 1024);
  try {
    A.chain(40);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), "BoundExceeded");
  }
}
