#pragma once

// Decidable subsets of the naturals used to quotient the branching of
// nodes: residue classes modulo m, adjusted by finitely many explicit
// inclusions and exclusions.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "baire/core.hpp"

namespace baire {

/// n is a member iff n is in `include`, or n is not in `exclude` and
/// n mod modulus is one of `residues`. Infinite iff residues is nonempty.
struct NatClass {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues;
  std::vector<Nat> include;
  std::vector<Nat> exclude;

  static NatClass everything() { return {1, {0}, {}, {}}; }
  static NatClass finite(std::vector<Nat> members) { return {1, {}, std::move(members), {}}; }
  static NatClass residue(std::uint64_t m, std::vector<std::uint64_t> rs) { return {m, std::move(rs), {}, {}}; }
  static NatClass allExcept(std::vector<Nat> excluded) { return {1, {0}, {}, std::move(excluded)}; }

  bool infinite() const { return !residues.empty(); }

  bool contains(const Nat& n) const {
    for (const auto& v : include)
      if (v == n) return true;
    for (const auto& v : exclude)
      if (v == n) return false;
    if (residues.empty()) return false;
    auto r = static_cast<std::uint64_t>(n % modulus);
    for (auto x : residues)
      if (x == r) return true;
    return false;
  }

  /// Largest explicitly listed value plus one (0 when none).
  Nat explicitBound() const {
    Nat b = 0;
    for (const auto& v : include) b = std::max(b, Nat(v + 1));
    for (const auto& v : exclude) b = std::max(b, Nat(v + 1));
    return b;
  }

  friend bool operator==(const NatClass&, const NatClass&) = default;
};

using ClassPartition = std::vector<NatClass>;

namespace detail {

inline constexpr std::uint64_t kMaxPeriod = 1u << 22;
inline constexpr std::uint64_t kMaxExplicit = 1u << 22;

inline std::uint64_t lcmChecked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t l = std::lcm(a, b);
  if (l > kMaxPeriod) throw DomainError("BoundExceeded", "combined class modulus too large");
  return l;
}

inline std::uint64_t toSmall(const Nat& n) {
  if (n > kMaxExplicit) throw DomainError("BoundExceeded", "explicit class element too large");
  return static_cast<std::uint64_t>(n);
}

}  // namespace detail

/// Intersection of finitely many classes, optionally restricted to a
/// finite alphabet. Above `threshold()` membership is periodic with period
/// `period()`, which makes emptiness, finiteness and successor queries exact.
class Constraint {
 public:
  Constraint() { rebuild(); }
  explicit Constraint(std::vector<NatClass> classes, std::optional<std::vector<Nat>> alphabet = std::nullopt)
      : classes_(std::move(classes)), alphabet_(std::move(alphabet)) {
    rebuild();
  }

  Constraint with(const NatClass& c) const {
    auto cs = classes_;
    cs.push_back(c);
    return Constraint(std::move(cs), alphabet_);
  }

  const std::vector<NatClass>& classes() const noexcept { return classes_; }
  const std::optional<std::vector<Nat>>& alphabet() const noexcept { return alphabet_; }

  bool contains(const Nat& n) const {
    if (alphabet_ && std::find(alphabet_->begin(), alphabet_->end(), n) == alphabet_->end()) return false;
    for (const auto& c : classes_)
      if (!c.contains(n)) return false;
    return true;
  }

  bool infinite() const { return !alphabet_ && !periodicResidues_.empty(); }

  /// Least member >= from, if any.
  std::optional<Nat> nextMember(const Nat& from) const {
    if (alphabet_) {
      std::optional<Nat> best;
      for (const auto& v : *alphabet_)
        if (v >= from && contains(v) && (!best || v < *best)) best = v;
      return best;
    }
    Nat n = from;
    for (; n < threshold_; ++n)
      if (contains(n)) return n;
    if (periodicResidues_.empty()) return std::nullopt;
    auto r = static_cast<std::uint64_t>(n % period_);
    Nat base = n - r;
    auto it = periodicResidues_.lower_bound(r);
    if (it != periodicResidues_.end()) return base + *it;
    return base + period_ + *periodicResidues_.begin();
  }

  bool empty() const { return !nextMember(0); }

  /// Members when the set is finite; nullopt when infinite.
  std::optional<std::vector<Nat>> finiteMembers() const {
    if (infinite()) return std::nullopt;
    std::vector<Nat> out;
    if (alphabet_) {
      for (const auto& v : *alphabet_)
        if (contains(v)) out.push_back(v);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    for (Nat n = 0; n < threshold_; ++n)
      if (contains(n)) out.push_back(n);
    return out;
  }

  /// Whether some member lies outside the finite set `avoid`.
  bool hasMemberOutside(const std::set<Nat>& avoid) const {
    if (infinite()) return true;
    auto members = finiteMembers();
    for (const auto& v : *members)
      if (!avoid.count(v)) return true;
    return false;
  }

  std::uint64_t period() const noexcept { return period_; }
  const Nat& threshold() const noexcept { return threshold_; }

 private:
  void rebuild() {
    period_ = 1;
    threshold_ = 0;
    for (const auto& c : classes_) {
      if (c.modulus == 0) throw DomainError("InvalidInput", "class modulus must be positive");
      period_ = detail::lcmChecked(period_, c.modulus);
      threshold_ = std::max(threshold_, c.explicitBound());
    }
    detail::toSmall(threshold_);
    periodicResidues_.clear();
    for (std::uint64_t r = 0; r < period_; ++r) {
      bool ok = true;
      for (const auto& c : classes_) {
        bool in = false;
        for (auto x : c.residues)
          if (x == r % c.modulus) in = true;
        if (!in) {
          ok = false;
          break;
        }
      }
      if (ok) periodicResidues_.insert(r);
    }
  }

  std::vector<NatClass> classes_;
  std::optional<std::vector<Nat>> alphabet_;
  std::uint64_t period_ = 1;
  Nat threshold_ = 0;
  std::set<std::uint64_t> periodicResidues_;
};

/// Index of the class containing n. Partitions are validated on input, so
/// exactly one class matches.
inline std::size_t classify(const ClassPartition& p, const Nat& n) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].contains(n)) return i;
  throw DomainError("InvalidInput", "value " + n.str() + " is in no class of the partition");
}

/// Checks pairwise disjointness and coverage of omega. Membership is
/// periodic above the largest explicit element, so one period suffices.
inline void validatePartition(const ClassPartition& p) {
  if (p.empty()) throw DomainError("InvalidInput", "empty class partition");
  std::uint64_t period = 1;
  Nat threshold = 0;
  for (const auto& c : p) {
    if (c.modulus == 0) throw DomainError("InvalidInput", "class modulus must be positive");
    for (auto r : c.residues)
      if (r >= c.modulus) throw DomainError("InvalidInput", "residue not below modulus");
    period = detail::lcmChecked(period, c.modulus);
    threshold = std::max(threshold, c.explicitBound());
  }
  std::uint64_t end = detail::toSmall(threshold) + period;
  for (std::uint64_t n = 0; n < end; ++n) {
    int hits = 0;
    for (const auto& c : p) hits += c.contains(n) ? 1 : 0;
    if (hits != 1)
      throw DomainError("InvalidInput", "classes are not a partition of omega at " + std::to_string(n));
  }
}

/// The residue/explicit data of a set of partitions that distinguishes
/// values at one position: two values outside `specials` with equal residue
/// modulo `modulus` are indistinguishable by every class involved.
struct Distinctions {
  std::set<Nat> specials;
  std::uint64_t modulus = 1;

  void absorb(const NatClass& c) {
    modulus = detail::lcmChecked(modulus, c.modulus);
    specials.insert(c.include.begin(), c.include.end());
    specials.insert(c.exclude.begin(), c.exclude.end());
  }
  void absorb(const ClassPartition& p) {
    for (const auto& c : p) absorb(c);
  }
  void merge(const Distinctions& o) {
    modulus = detail::lcmChecked(modulus, o.modulus);
    specials.insert(o.specials.begin(), o.specials.end());
  }

  /// Smallest non-special value at least `floor` with the given residue.
  Nat ordinaryRep(std::uint64_t residue, const Nat& floor) const {
    Nat start = floor;
    if (!specials.empty()) start = std::max(start, Nat(*specials.rbegin() + 1));
    auto r = static_cast<std::uint64_t>(start % modulus);
    Nat v = start - r + residue;
    if (v < start) v += modulus;
    return v;
  }

  /// One value from every equivalence class of values >= floor.
  std::vector<Nat> representatives(const Nat& floor) const {
    std::vector<Nat> out;
    for (const auto& s : specials)
      if (s >= floor) out.push_back(s);
    for (std::uint64_t r = 0; r < modulus; ++r) out.push_back(ordinaryRep(r, floor));
    return out;
  }
};

}  // namespace baire
