#pragma once

// Finite challenge-response relations, their norms, and morphism checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "baire/core.hpp"

namespace baire {

struct FiniteRelation {
  std::vector<std::string> challenges;
  std::vector<std::string> responses;
  std::set<std::pair<std::string, std::string>> meets;

  bool met(const std::string& c, const std::string& r) const { return meets.count({c, r}) > 0; }

  void validate() const {
    std::set<std::string> cs(challenges.begin(), challenges.end());
    std::set<std::string> rs(responses.begin(), responses.end());
    if (cs.size() != challenges.size() || rs.size() != responses.size())
      throw DomainError("InvalidInput", "duplicate challenge or response label");
    for (const auto& [c, r] : meets)
      if (!cs.count(c) || !rs.count(r))
        throw DomainError("InvalidInput", "meets pair (" + c + "," + r + ") outside challenges x responses");
  }
};

struct MorphismWitness {
  std::map<std::string, std::string> phiMinus;  // B-challenge -> A-challenge
  std::map<std::string, std::string> phiPlus;   // A-response  -> B-response
};

namespace detail {

struct CoverSearch {
  std::vector<std::vector<std::size_t>> coveredBy;  // response -> challenge indices
  std::vector<std::vector<std::size_t>> meetsOf;    // challenge -> response indices
  std::size_t best;

  void run(std::vector<int>& coverCount, std::size_t chosen) {
    if (chosen >= best) return;
    // Branch on the uncovered challenge with the fewest options.
    std::size_t pick = coverCount.size();
    for (std::size_t c = 0; c < coverCount.size(); ++c)
      if (coverCount[c] == 0 && (pick == coverCount.size() || meetsOf[c].size() < meetsOf[pick].size()))
        pick = c;
    if (pick == coverCount.size()) {
      best = chosen;
      return;
    }
    if (chosen + 1 >= best) return;
    for (auto r : meetsOf[pick]) {
      for (auto c : coveredBy[r]) ++coverCount[c];
      run(coverCount, chosen + 1);
      for (auto c : coveredBy[r]) --coverCount[c];
    }
  }
};

}  // namespace detail

/// Least number of responses meeting every challenge (exact set cover).
inline std::size_t norm(const FiniteRelation& rel) {
  rel.validate();
  detail::CoverSearch s;
  s.coveredBy.resize(rel.responses.size());
  s.meetsOf.resize(rel.challenges.size());
  for (std::size_t c = 0; c < rel.challenges.size(); ++c)
    for (std::size_t r = 0; r < rel.responses.size(); ++r)
      if (rel.met(rel.challenges[c], rel.responses[r])) {
        s.coveredBy[r].push_back(c);
        s.meetsOf[c].push_back(r);
      }
  for (std::size_t c = 0; c < rel.challenges.size(); ++c)
    if (s.meetsOf[c].empty())
      throw DomainError("NoCover", "challenge " + rel.challenges[c] + " is met by no response");
  s.best = rel.responses.size() + 1;
  std::vector<int> count(rel.challenges.size(), 0);
  s.run(count, 0);
  return s.best;
}

/// phiMinus(c) A r  implies  c B phiPlus(r), for all B-challenges c and
/// A-responses r.
inline bool checkMorphism(const FiniteRelation& a, const FiniteRelation& b, const MorphismWitness& w) {
  for (const auto& c : b.challenges) {
    auto pc = w.phiMinus.find(c);
    if (pc == w.phiMinus.end()) throw DomainError("InvalidInput", "phiMinus undefined at " + c);
    for (const auto& r : a.responses) {
      auto pr = w.phiPlus.find(r);
      if (pr == w.phiPlus.end()) throw DomainError("InvalidInput", "phiPlus undefined at " + r);
      if (a.met(pc->second, r) && !b.met(c, pr->second)) return false;
    }
  }
  return true;
}

}  // namespace baire
