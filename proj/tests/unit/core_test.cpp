#include <random>

#include <gtest/gtest.h>

#include "baire/core.hpp"

using namespace baire;

namespace {

EventuallyPeriodicSeq seq(std::initializer_list<int> prefix, std::initializer_list<int> period) {
  Node p, q;
  for (int v : prefix) p.emplace_back(v);
  for (int v : period) q.emplace_back(v);
  return {p, q};
}

Node node(std::initializer_list<int> xs) {
  Node t;
  for (int v : xs) t.emplace_back(v);
  return t;
}

const PresentedTree zeroChain = PresentedTree::chain(EventuallyPeriodicSeq::constant(0));

// Brute-force minimum exit over extensions of t with entries <= 9 and depth <= 4.
std::size_t bruteMinExit(const PresentedTree& T, const Node& t) {
  std::size_t best = SIZE_MAX;
  std::function<void(Node&)> rec = [&](Node& u) {
    for (std::size_t l = 0; l <= u.size(); ++l)
      if (!T.contains(truncate(u, l))) {
        best = std::min(best, l);
        return;
      }
    if (u.size() >= t.size() + 4) return;
    for (int n = 0; n <= 9; ++n) {
      u.emplace_back(n);
      rec(u);
      u.pop_back();
    }
  };
  Node u = t;
  rec(u);
  return best;
}

}  // namespace

TEST(SeqAt, ReadsPrefixThenPeriod) {
  auto x = seq({6, 1}, {0});
  EXPECT_EQ(x.at(1), 1);
  EXPECT_EQ(x.at(7), 0);
  EXPECT_EQ(seq({}, {3}).at(0), 3);
}

TEST(SeqAt, CanonicalFormIsMinimal) {
  auto x = seq({1, 2, 1, 2}, {1, 2, 1, 2});
  EXPECT_TRUE(x.prefix().empty());
  EXPECT_EQ(x.period(), node({1, 2}));
  EXPECT_EQ(seq({5, 0, 0}, {0, 0}), seq({5}, {0}));
  EXPECT_THROW(seq({1}, {}), DomainError);
}

TEST(SeqAt, CanonicalizationPreservesValues) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    Node p, q;
    for (int i = rng() % 5; i > 0; --i) p.emplace_back(rng() % 3);
    for (int i = 1 + rng() % 4; i > 0; --i) q.emplace_back(rng() % 3);
    EventuallyPeriodicSeq x(p, q);
    for (std::size_t i = 0; i <= 3 * (p.size() + q.size()); ++i) {
      Nat raw = i < p.size() ? p[i] : q[(i - p.size()) % q.size()];
      ASSERT_EQ(x.at(i), raw);
    }
  }
}

TEST(TreeMember, SpinePrefixesAndRoot) {
  EXPECT_TRUE(treeMember(zeroChain, node({0, 0})));
  EXPECT_FALSE(treeMember(zeroChain, node({0, 5})));
  EXPECT_TRUE(treeMember(zeroChain, node({})));
  PresentedTree t({}, {node({4, 2})});
  EXPECT_TRUE(t.contains(node({4})));
  EXPECT_FALSE(t.contains(node({2})));
}

TEST(ExitLevel, Examples) {
  EXPECT_EQ(exitLevel(zeroChain, seq({0, 0, 5}, {0})), 3u);
  EXPECT_FALSE(exitLevel(zeroChain, EventuallyPeriodicSeq::constant(0)).has_value());
  EXPECT_EQ(exitLevel(zeroChain, seq({7}, {0})), 1u);
}

TEST(ExitLevel, FirstLeavingLevelProperty) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 300; ++it) {
    auto spine = seq({int(rng() % 2)}, {int(rng() % 3), int(rng() % 3)});
    Node extra;
    for (int i = rng() % 4; i > 0; --i) extra.emplace_back(rng() % 3);
    PresentedTree T({spine}, {extra});
    Node p;
    for (int i = rng() % 6; i > 0; --i) p.emplace_back(rng() % 3);
    EventuallyPeriodicSeq x(p, {Nat(rng() % 3)});
    auto l = exitLevel(T, x);
    if (!l) {
      for (std::size_t k = 0; k < 20; ++k) ASSERT_TRUE(T.contains(x.take(k)));
      continue;
    }
    for (std::size_t k = 0; k < *l; ++k) ASSERT_TRUE(T.contains(x.take(k)));
    ASSERT_FALSE(T.contains(x.take(*l)));
  }
}

TEST(MinExitOnCylinder, MatchesBruteForce) {
  EXPECT_EQ(minExitOnCylinder(zeroChain, node({5})), 1u);
  EXPECT_EQ(minExitOnCylinder(zeroChain, node({0, 0})), 3u);
  EXPECT_EQ(minExitOnCylinder(zeroChain, node({})), 1u);
  for (auto t : {node({5}), node({0, 0}), node({}), node({0, 3, 1})})
    EXPECT_EQ(minExitOnCylinder(zeroChain, t), bruteMinExit(zeroChain, t));
}

TEST(MinExitOnCylinder, BoundsSampledExits) {
  std::mt19937_64 rng(9);
  PresentedTree T({seq({1}, {0, 2})}, {node({1, 1, 1}), node({3})});
  for (int it = 0; it < 300; ++it) {
    Node t;
    for (int i = rng() % 4; i > 0; --i) t.emplace_back(rng() % 4);
    Node tail;
    for (int i = rng() % 3; i > 0; --i) tail.emplace_back(rng() % 4);
    EventuallyPeriodicSeq x(concat(t, tail), {Nat(rng() % 4)});
    if (auto l = exitLevel(T, x)) ASSERT_LE(minExitOnCylinder(T, t), *l);
  }
}
