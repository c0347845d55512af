#pragma once

// Finitary points of Baire space: nodes, eventually periodic sequences,
// finitely presented trees and the exit level of a point from a tree.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace baire {

using Nat = boost::multiprecision::cpp_int;

/// A node of the tree of finite sequences of naturals.
using Node = std::vector<Nat>;

/// Failure of a domain-level operation. `kind()` is a stable tag
/// (e.g. "NoCover", "ClassCaptured") used by the CLI error objects.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline bool isPrefix(const Node& shorter, const Node& longer) {
  return shorter.size() <= longer.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

inline Node concat(Node t, const Node& tail) {
  t.insert(t.end(), tail.begin(), tail.end());
  return t;
}

inline Node append(Node t, Nat n) {
  t.push_back(std::move(n));
  return t;
}

inline Node truncate(const Node& t, std::size_t len) {
  return Node(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(std::min(len, t.size())));
}

inline std::string toString(const Node& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += t[i].str();
  }
  return out;
}

/// A point of Baire space given as prefix followed by a repeating period.
/// Always held in canonical form: minimal period, then minimal prefix.
class EventuallyPeriodicSeq {
 public:
  EventuallyPeriodicSeq(Node prefix, Node period)
      : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty())
      throw DomainError("InvalidInput", "eventually periodic sequence needs a nonempty period");
    canonicalize();
  }

  static EventuallyPeriodicSeq constant(const Nat& v) { return {{}, {v}}; }

  const Node& prefix() const noexcept { return prefix_; }
  const Node& period() const noexcept { return period_; }

  const Nat& at(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
  }

  /// x restricted to its first n entries.
  Node take(std::size_t n) const {
    Node out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }

  /// Drops the first k entries.
  EventuallyPeriodicSeq drop(std::size_t k) const {
    if (k <= prefix_.size())
      return {Node(prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end()), period_};
    std::size_t shift = (k - prefix_.size()) % period_.size();
    Node rotated;
    for (std::size_t i = 0; i < period_.size(); ++i)
      rotated.push_back(period_[(shift + i) % period_.size()]);
    return {{}, rotated};
  }

  EventuallyPeriodicSeq prepend(const Node& head) const {
    return {concat(head, prefix_), period_};
  }

  /// Length of the longest common initial segment with `other`;
  /// nullopt when the two sequences are equal.
  std::optional<std::size_t> agreement(const EventuallyPeriodicSeq& other) const {
    std::size_t span = std::max(prefix_.size(), other.prefix_.size()) +
                       std::lcm(period_.size(), other.period_.size());
    for (std::size_t i = 0; i < span; ++i)
      if (at(i) != other.at(i)) return i;
    return std::nullopt;
  }

  /// Whether some element of `set` occurs infinitely often.
  template <class Pred>
  bool periodHits(Pred&& inSet) const {
    return std::any_of(period_.begin(), period_.end(), inSet);
  }

  friend bool operator==(const EventuallyPeriodicSeq& a, const EventuallyPeriodicSeq& b) {
    return a.prefix_ == b.prefix_ && a.period_ == b.period_;
  }

 private:
  void canonicalize() {
    const std::size_t p = period_.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d) continue;
      bool ok = true;
      for (std::size_t i = d; i < p && ok; ++i) ok = period_[i] == period_[i - d];
      if (ok) {
        period_.resize(d);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
      prefix_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  }

  Node prefix_;
  Node period_;
};

/// A tree given as the union of the prefix chains [[s]] of finitely many
/// eventually periodic spines and a finite prefix-closed node set.
class PresentedTree {
 public:
  PresentedTree() = default;
  PresentedTree(std::vector<EventuallyPeriodicSeq> spines, const std::vector<Node>& extra)
      : spines_(std::move(spines)) {
    for (const auto& u : extra)
      for (std::size_t l = 1; l <= u.size(); ++l) extra_.insert(truncate(u, l));
  }

  static PresentedTree chain(const EventuallyPeriodicSeq& a) { return {{a}, {}}; }

  const std::vector<EventuallyPeriodicSeq>& spines() const noexcept { return spines_; }
  const std::set<Node>& extraNodes() const noexcept { return extra_; }

  bool contains(const Node& t) const {
    if (t.empty()) return true;
    if (extra_.count(t)) return true;
    return std::any_of(spines_.begin(), spines_.end(), [&](const auto& s) { return onSpine(s, t); });
  }

  /// Values n with t^n in the tree; always a finite set.
  std::set<Nat> childValues(const Node& t) const {
    std::set<Nat> out;
    for (const auto& s : spines_)
      if (onSpine(s, t)) out.insert(s.at(t.size()));
    for (auto it = extra_.lower_bound(t); it != extra_.end() && isPrefix(t, *it); ++it)
      if (it->size() > t.size()) out.insert((*it)[t.size()]);
    return out;
  }

  /// Spines whose chain passes through the node t.
  std::vector<const EventuallyPeriodicSeq*> spinesThrough(const Node& t) const {
    std::vector<const EventuallyPeriodicSeq*> out;
    for (const auto& s : spines_)
      if (onSpine(s, t)) out.push_back(&s);
    return out;
  }

  std::size_t maxExtraDepth() const {
    std::size_t d = 0;
    for (const auto& u : extra_) d = std::max(d, u.size());
    return d;
  }

  /// Every value occurring at position i of some spine or extra node.
  std::set<Nat> valuesAt(std::size_t i) const {
    std::set<Nat> out;
    for (const auto& s : spines_) out.insert(s.at(i));
    for (const auto& u : extra_)
      if (u.size() > i) out.insert(u[i]);
    return out;
  }

  /// The subtree below the one-entry node <n>, re-rooted.
  PresentedTree below(const Nat& n) const {
    PresentedTree out;
    for (const auto& s : spines_)
      if (s.at(0) == n) out.spines_.push_back(s.drop(1));
    for (const auto& u : extra_)
      if (u.size() >= 2 && u[0] == n) out.extra_.insert(Node(u.begin() + 1, u.end()));
    return out;
  }

 private:
  static bool onSpine(const EventuallyPeriodicSeq& s, const Node& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (s.at(i) != t[i]) return false;
    return true;
  }

  std::vector<EventuallyPeriodicSeq> spines_;
  std::set<Node> extra_;
};

inline bool treeMember(const PresentedTree& tree, const Node& t) { return tree.contains(t); }

/// Least l with x|l outside the tree; nullopt when every initial segment of
/// x stays in the tree (x is one of the spines).
inline std::optional<std::size_t> exitLevel(const PresentedTree& tree, const EventuallyPeriodicSeq& x) {
  std::size_t deepest = 0;
  for (const auto& s : tree.spines()) {
    auto agree = x.agreement(s);
    if (!agree) return std::nullopt;
    deepest = std::max(deepest, *agree);
  }
  for (const auto& u : tree.extraNodes()) {
    if (u.size() <= deepest) continue;
    bool match = true;
    for (std::size_t i = 0; i < u.size() && match; ++i) match = x.at(i) == u[i];
    if (match) deepest = u.size();
  }
  return deepest + 1;
}

/// Minimum exit level over every x extending t. Children sets of tree nodes
/// are finite, so once t is in the tree an exit one step below is available.
inline std::size_t minExitOnCylinder(const PresentedTree& tree, const Node& t) {
  for (std::size_t l = 1; l <= t.size(); ++l)
    if (!tree.contains(truncate(t, l))) return l;
  return t.size() + 1;
}

}  // namespace baire
