#pragma once

// JSON documents for every input and output type. Objects come out with
// sorted keys, naturals above 2^53 as decimal strings, and every top-level
// document carries "version": 1. Parsing accepts either form of natural and
// rejects malformed input with InvalidInput.

#include <json.hpp>

#include "baire/codes.hpp"
#include "baire/crrel.hpp"
#include "baire/hechler.hpp"
#include "baire/reach.hpp"

namespace baire::json_io {

using Json = nlohmann::json;

inline constexpr int kVersion = 1;

[[noreturn]] inline void bad(const std::string& what) { throw DomainError("InvalidInput", what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T fieldOr(const Json& j, const char* key, T dflt) {
  return j.is_object() && j.contains(key) ? j.at(key).get<T>() : dflt;
}

// ---------------------------------------------------------------------------
// Naturals and nodes

inline Json toJson(const Nat& n) {
  static const Nat limit = Nat(1) << 53;
  if (n <= limit) return Json(static_cast<std::uint64_t>(n));
  return Json(n.str());
}

inline Nat natFrom(const Json& j) {
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Nat(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("not a natural: \"" + s + "\"");
    return Nat(s);
  }
  bad("not a natural: " + j.dump());
}

inline std::size_t sizeFrom(const Json& j) {
  Nat n = natFrom(j);
  if (n > std::numeric_limits<std::uint32_t>::max()) bad("index too large: " + n.str());
  return static_cast<std::size_t>(n);
}

inline Json toJson(const Node& t) {
  Json out = Json::array();
  for (const auto& n : t) out.push_back(toJson(n));
  return out;
}

inline Node nodeFrom(const Json& j) {
  if (!j.is_array()) bad("node must be an array");
  Node t;
  for (const auto& e : j) t.push_back(natFrom(e));
  return t;
}

inline Json toJson(const std::set<Nat>& s) {
  Json out = Json::array();
  for (const auto& n : s) out.push_back(toJson(n));
  return out;
}

inline std::set<Nat> natSetFrom(const Json& j) {
  Node t = nodeFrom(j);
  return {t.begin(), t.end()};
}

/// Adds the version tag to a top-level document.
inline Json document(Json body) {
  body["version"] = kVersion;
  return body;
}

/// Checks the version tag of a top-level document.
inline const Json& checkVersion(const Json& j) {
  if (j.is_object() && j.contains("version") && j.at("version") != kVersion)
    bad("unsupported document version " + j.at("version").dump());
  return j;
}

// ---------------------------------------------------------------------------
// Sequences and trees

inline Json toJson(const EventuallyPeriodicSeq& s) { return {{"prefix", toJson(s.prefix())}, {"period", toJson(s.period())}}; }

inline EventuallyPeriodicSeq seqFrom(const Json& j) { return {nodeFrom(field(j, "prefix")), nodeFrom(field(j, "period"))}; }

inline Json toJson(const PresentedTree& t) {
  Json spines = Json::array();
  for (const auto& s : t.spines()) spines.push_back(toJson(s));
  Json extra = Json::array();
  for (const auto& u : t.extraNodes()) extra.push_back(toJson(u));
  return {{"spines", spines}, {"extraNodes", extra}};
}

inline PresentedTree treeFrom(const Json& j) {
  std::vector<EventuallyPeriodicSeq> spines;
  for (const auto& s : field(j, "spines")) spines.push_back(seqFrom(s));
  std::vector<Node> extra;
  if (j.contains("extraNodes"))
    for (const auto& u : j.at("extraNodes")) extra.push_back(nodeFrom(u));
  return {std::move(spines), extra};
}

// ---------------------------------------------------------------------------
// Classes and codes

inline Json toJson(const NatClass& c) {
  Json res = Json::array();
  for (auto r : c.residues) res.push_back(r);
  return {{"modulus", c.modulus}, {"residues", res}, {"include", toJson(Node(c.include))}, {"exclude", toJson(Node(c.exclude))}};
}

inline NatClass classFrom(const Json& j) {
  NatClass c;
  c.modulus = fieldOr<std::uint64_t>(j, "modulus", 1);
  if (c.modulus == 0) bad("class modulus must be positive");
  if (j.contains("residues"))
    for (const auto& r : j.at("residues")) c.residues.push_back(r.get<std::uint64_t>());
  if (j.contains("include")) c.include = nodeFrom(j.at("include"));
  if (j.contains("exclude")) c.exclude = nodeFrom(j.at("exclude"));
  return c;
}

inline Json toJson(const ClassPartition& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(toJson(c));
  return out;
}

inline ClassPartition partitionFrom(const Json& j) {
  if (!j.is_array()) bad("partition must be an array of classes");
  ClassPartition p;
  for (const auto& c : j) p.push_back(classFrom(c));
  return p;
}

inline Json toJson(const Leaf& l) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ConstLeaf>) {
          return {{"kind", "const"}, {"value", toJson(x.value)}};
        } else if constexpr (std::is_same_v<T, ExitLeaf>) {
          return {{"kind", "exit"}, {"tree", toJson(x.tree)}, {"dflt", toJson(x.dflt)},
                  {"offset", toJson(x.offset)}, {"shift", x.shift}};
        } else if constexpr (std::is_same_v<T, FirstHitLeaf>) {
          return {{"kind", "firstHit"}, {"hits", toJson(x.hits)}, {"start", x.start},
                  {"offset", toJson(x.offset)}, {"dflt", toJson(x.dflt)}};
        } else {
          return {{"kind", "thresh"}, {"inner", toJson(*x.inner)}, {"cutoff", toJson(x.cutoff)}};
        }
      },
      l.v);
}

inline Leaf leafFrom(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  auto nat = [&](const char* k) { return j.contains(k) ? natFrom(j.at(k)) : Nat(0); };
  if (kind == "const") return Leaf{ConstLeaf{natFrom(field(j, "value"))}};
  if (kind == "exit")
    return Leaf{ExitLeaf{treeFrom(field(j, "tree")), nat("dflt"), nat("offset"), fieldOr<std::size_t>(j, "shift", 0)}};
  if (kind == "firstHit")
    return Leaf{FirstHitLeaf{natSetFrom(field(j, "hits")), fieldOr<std::size_t>(j, "start", 0), nat("offset"), nat("dflt")}};
  if (kind == "thresh") return Leaf{ThreshLeaf{std::make_shared<const Leaf>(leafFrom(field(j, "inner"))), natFrom(field(j, "cutoff"))}};
  bad("unknown leaf kind \"" + kind + "\"");
}

inline Json toJson(const ChallengeCode& c) {
  if (c.isLeaf()) return toJson(c.asLeaf());
  const auto& q = c.asQuery();
  Json kids = Json::array();
  for (const auto& ch : q.children) kids.push_back(toJson(ch));
  return {{"kind", "query"}, {"coordinate", q.coordinate}, {"partition", toJson(q.partition)}, {"children", kids}};
}

inline ChallengeCode codeFrom(const Json& j) {
  if (field(j, "kind") == "query") {
    std::vector<ChallengeCode> kids;
    for (const auto& ch : field(j, "children")) kids.push_back(codeFrom(ch));
    return ChallengeCode::query(sizeFrom(field(j, "coordinate")), partitionFrom(field(j, "partition")), std::move(kids));
  }
  return ChallengeCode::leaf(leafFrom(j));
}

// ---------------------------------------------------------------------------
// Relations

inline Json toJson(const FiniteRelation& r) {
  Json meets = Json::array();
  for (const auto& [c, s] : r.meets) meets.push_back({c, s});
  return {{"challenges", r.challenges}, {"responses", r.responses}, {"meets", meets}};
}

inline FiniteRelation relationFrom(const Json& j) {
  FiniteRelation r;
  r.challenges = field(j, "challenges").get<std::vector<std::string>>();
  r.responses = field(j, "responses").get<std::vector<std::string>>();
  for (const auto& m : field(j, "meets")) {
    if (!m.is_array() || m.size() != 2) bad("meets entries must be [challenge, response]");
    r.meets.insert({m[0].get<std::string>(), m[1].get<std::string>()});
  }
  r.validate();
  return r;
}

inline Json toJson(const MorphismWitness& w) { return {{"phiMinus", w.phiMinus}, {"phiPlus", w.phiPlus}}; }

inline MorphismWitness morphismFrom(const Json& j) {
  return {field(j, "phiMinus").get<std::map<std::string, std::string>>(),
          field(j, "phiPlus").get<std::map<std::string, std::string>>()};
}

// ---------------------------------------------------------------------------
// Automata, side conditions, conditions

inline Json toJson(const QuotientAutomaton& s) {
  Json per = Json::array();
  Json accepting = Json::array();
  for (std::size_t q = 0; q < s.states.size(); ++q) {
    const auto& st = s.states[q];
    Json flags = Json::array();
    for (const auto& c : st.classes) flags.push_back(c.infinite() ? "infinite" : "finite");
    per.push_back({{"classes", toJson(st.classes)}, {"flags", flags}, {"next", st.next}});
    if (st.accepting) accepting.push_back(q);
  }
  return {{"states", s.states.size()}, {"start", s.start}, {"perState", per}, {"accepting", accepting}};
}

inline QuotientAutomaton automatonFrom(const Json& j) {
  QuotientAutomaton s;
  const auto& per = field(j, "perState");
  if (!per.is_array()) bad("perState must be an array");
  if (j.contains("states") && sizeFrom(j.at("states")) != per.size()) bad("state count disagrees with perState");
  for (const auto& st : per) {
    AutomatonState a;
    a.classes = partitionFrom(field(st, "classes"));
    for (const auto& q : field(st, "next")) a.next.push_back(sizeFrom(q));
    if (st.contains("flags")) {
      const auto& flags = st.at("flags");
      if (flags.size() != a.classes.size()) bad("one flag per class expected");
      for (std::size_t c = 0; c < a.classes.size(); ++c)
        if ((flags[c] == "infinite") != a.classes[c].infinite()) bad("class flag disagrees with the class");
    }
    s.states.push_back(std::move(a));
  }
  s.start = fieldOr<std::size_t>(j, "start", 0);
  if (j.contains("accepting"))
    for (const auto& q : j.at("accepting")) {
      std::size_t i = sizeFrom(q);
      if (i >= s.states.size()) bad("accepting state out of range");
      s.states[i].accepting = true;
    }
  s.validate();
  return s;
}

inline Json toJson(const HFun& h) {
  Json parts = Json::array();
  for (const auto& p : h.parts) {
    if (auto* lt = std::get_if<LevelTable>(&p)) {
      Json levels = Json::array();
      for (const auto& [l, v] : lt->levels) levels.push_back({l, toJson(v)});
      parts.push_back({{"kind", "levels"}, {"levels", levels}, {"tail", toJson(lt->tail)}});
    } else {
      const auto& sb = std::get<StateBound>(p);
      Json bounds = Json::array();
      for (const auto& b : sb.bounds) bounds.push_back(toJson(b));
      parts.push_back({{"kind", "states"}, {"automaton", toJson(sb.automaton)}, {"bounds", bounds}});
    }
  }
  return {{"parts", parts}};
}

inline HFun hfunFrom(const Json& j) {
  // A bare natural stands for the constant side condition.
  if (!j.is_object()) return HFun::constant(natFrom(j));
  HFun h;
  for (const auto& p : field(j, "parts")) {
    const auto kind = field(p, "kind").get<std::string>();
    if (kind == "levels") {
      LevelTable lt;
      if (p.contains("levels"))
        for (const auto& e : p.at("levels")) {
          if (!e.is_array() || e.size() != 2) bad("level entries must be [level, value]");
          lt.levels[sizeFrom(e[0])] = natFrom(e[1]);
        }
      lt.tail = p.contains("tail") ? natFrom(p.at("tail")) : Nat(0);
      h.parts.emplace_back(std::move(lt));
    } else if (kind == "states") {
      StateBound sb{automatonFrom(field(p, "automaton")), {}};
      for (const auto& b : field(p, "bounds")) sb.bounds.push_back(natFrom(b));
      if (sb.bounds.size() != sb.automaton.states.size()) bad("one bound per automaton state expected");
      h.parts.emplace_back(std::move(sb));
    } else {
      bad("unknown side-condition kind \"" + kind + "\"");
    }
  }
  return h;
}

inline Json toJson(const Condition& p) { return {{"stem", toJson(p.stem)}, {"side", toJson(p.side)}}; }

inline Condition conditionFrom(const Json& j) {
  return {nodeFrom(field(j, "stem")), j.contains("side") ? hfunFrom(j.at("side")) : HFun{}};
}

inline Json toJson(const DenseSetSpec& u) { return {{"stems", toJson(u.stems)}, {"hFloor", toJson(u.hFloor)}}; }

inline DenseSetSpec denseSetFrom(const Json& j) {
  return {automatonFrom(field(j, "stems")), j.contains("hFloor") ? hfunFrom(j.at("hFloor")) : HFun{}};
}

inline Json toJson(const ToyModel& m) {
  Json dense = Json::array();
  for (const auto& u : m.denseSets) dense.push_back(toJson(u));
  return {{"denseSets", dense}, {"g", toJson(m.g.base)}};
}

inline ToyModel modelFrom(const Json& j) {
  std::vector<DenseSetSpec> dense;
  if (j.contains("denseSets"))
    for (const auto& u : j.at("denseSets")) dense.push_back(denseSetFrom(u));
  return ToyModel{std::move(dense), FunctionFamilyCode{codeFrom(field(j, "g"))}};
}

// ---------------------------------------------------------------------------
// Certificates

inline MoveKind moveKindFrom(const std::string& s) {
  for (auto k : {MoveKind::Dense, MoveKind::Determine, MoveKind::Ensure, MoveKind::Strategy, MoveKind::Bump})
    if (s == toString(k)) return k;
  bad("unknown move kind \"" + s + "\"");
}

inline Json toJson(const FusionCertificate& c) {
  Json coords = Json::array(), hits = Json::array(), raises = Json::array(), moves = Json::array();
  for (const auto& r : c.coordinates)
    coords.push_back({{"i", r.i}, {"m", toJson(r.m)}, {"determinedAt", r.determinedAt},
                      {"hitPosition", r.hitPosition}, {"ensured", r.ensured}});
  for (const auto& h : c.denseHits) hits.push_back({{"index", h.index}, {"stemLength", h.stemLength}});
  for (const auto& r : c.raises) raises.push_back({{"stemLength", r.stemLength}, {"level", toJson(r.level)}});
  for (const auto& m : c.moves)
    moves.push_back({{"value", toJson(m.value)}, {"kind", toString(m.kind)}, {"floor", toJson(m.floor)}, {"tag", m.tag}});
  return {{"xPrefix", toJson(c.xPrefix)}, {"coordinates", coords}, {"denseHits", hits},
          {"raises", raises}, {"moves", moves}, {"filler", toJson(c.filler)}};
}

inline FusionCertificate certificateFrom(const Json& j) {
  FusionCertificate c;
  c.xPrefix = nodeFrom(field(j, "xPrefix"));
  for (const auto& r : field(j, "coordinates"))
    c.coordinates.push_back({sizeFrom(field(r, "i")), natFrom(field(r, "m")), sizeFrom(field(r, "determinedAt")),
                             sizeFrom(field(r, "hitPosition")), fieldOr<bool>(r, "ensured", false)});
  if (j.contains("denseHits"))
    for (const auto& h : j.at("denseHits")) c.denseHits.push_back({sizeFrom(field(h, "index")), sizeFrom(field(h, "stemLength"))});
  if (j.contains("raises"))
    for (const auto& r : j.at("raises")) c.raises.push_back({sizeFrom(field(r, "stemLength")), natFrom(field(r, "level"))});
  for (const auto& m : field(j, "moves"))
    c.moves.push_back({natFrom(field(m, "value")), moveKindFrom(field(m, "kind").get<std::string>()),
                       natFrom(field(m, "floor")), sizeFrom(field(m, "tag"))});
  c.filler = natFrom(field(j, "filler"));
  return c;
}

}  // namespace baire::json_io
