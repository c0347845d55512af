// baire: command-line front end. Every input is a JSON file, every result a
// JSON document on stdout (or --out). Exit status 0 on success, 1 on a
// domain error (with a JSON error object), 2 on a usage error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "baire/baire.hpp"
#include "baire/json_io.hpp"

using namespace baire;
using json_io::Json;
using json_io::toJson;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::vector<std::string> bounds;
  std::string out;

  std::map<std::string, std::uint64_t> parsedBounds() const {
    std::map<std::string, std::uint64_t> m;
    for (const auto& b : bounds) {
      auto eq = b.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--bound", "expected name=n, got " + b);
      try {
        m[b.substr(0, eq)] = std::stoull(b.substr(eq + 1));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--bound", "expected name=n, got " + b);
      }
    }
    return m;
  }

  std::uint64_t bound(const std::string& name, std::uint64_t dflt) const {
    auto m = parsedBounds();
    auto it = m.find(name);
    return it == m.end() ? dflt : it->second;
  }
};

Json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("InvalidInput", "cannot read " + path);
  try {
    return json_io::checkVersion(Json::parse(in));
  } catch (const Json::exception& e) {
    throw DomainError("InvalidInput", path + ": " + e.what());
  }
}

Node parseNode(const std::string& text) {
  Node t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      if (item.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("InvalidInput", "node entries must be naturals: " + text);
      t.emplace_back(item);
    }
  return t;
}

GameBounds gameBounds(const RunConfig& cfg) {
  GameBounds b;
  b.maxHorizon = cfg.bound("horizon", b.maxHorizon);
  b.maxNodes = cfg.bound("nodes", b.maxNodes);
  b.maxStates = cfg.bound("states", b.maxStates);
  b.witnessBound = cfg.bound("witness", 1000000);
  return b;
}

FusionBounds fusionBounds(const RunConfig& cfg) {
  FusionBounds b;
  b.witnessBound = cfg.bound("witness", 1000000);
  b.determineDepth = cfg.bound("determine-depth", b.determineDepth);
  b.determineNodes = cfg.bound("determine-nodes", b.determineNodes);
  return b;
}

ASet asetOf(const EventuallyPeriodicSeq& a, const RunConfig& cfg) { return ASet(a, cfg.bound("bits", 1u << 20)); }

Json candidatesJson(const std::vector<DecodedCandidate>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back({{"node", toString(c.node)}, {"threshold", c.threshold}});
  return out;
}

Json horizJson(const HorizDecodeResult& r) {
  return {{"stem", toJson(r.stem)}, {"recovered", toJson(r.recovered)}, {"iterations", r.iterations}};
}

Json ranksJson(const std::vector<std::optional<std::size_t>>& ranks) {
  Json out = Json::array();
  for (const auto& r : ranks) out.push_back(r ? Json(*r) : Json(nullptr));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coding, decoding, reachability, fusion and games over eventually periodic points of Baire space"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<Json()> action;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--bound", cfg.bounds, "search bound as name=n (repeatable)");
    sub->add_option("--out", cfg.out, "write the result here instead of stdout");
  };
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    common(s);
    return s;
  };

  std::string aPath, xPath, gPath, treePath, sPath, hPath, modelPath, certPath, pPath, famPath, rPath, r2Path, wPath,
      hiddenPath, tText, kind;
  std::size_t n = 0, upto = 5, bigN = 32, l0 = 8, childBound = 16, candidateBound = 64, alphabet = 3;
  unsigned m = 0;

  auto* encode = sub("encode", "f_a(x)(n)");
  encode->add_option("--a", aPath)->required();
  encode->add_option("--x", xPath)->required();
  encode->add_option("--n", n)->required();
  encode->callback([&] {
    action = [&] {
      auto A = asetOf(json_io::seqFrom(readJson(aPath)), cfg);
      auto x = json_io::seqFrom(readJson(xPath));
      Json hit = nullptr;
      if (auto p = nthHitPosition(A, x, n)) hit = *p;
      return Json{{"n", n}, {"value", toJson(encodeF(A, x, n))}, {"hitPosition", hit}};
    };
  });

  auto* aset = sub("aset", "the chain e_1 < e_2 < ... coding a, with eta values");
  aset->add_option("--a", aPath)->required();
  aset->add_option("--upto", upto);
  aset->callback([&] {
    action = [&] {
      auto A = asetOf(json_io::seqFrom(readJson(aPath)), cfg);
      Json chain = Json::array(), eta = Json::array();
      for (const auto& e : A.chain(upto)) {
        chain.push_back(toJson(e));
        eta.push_back(toJson(A.eta(e)));
      }
      return Json{{"root", kRootCode}, {"chain", chain}, {"eta", eta}};
    };
  });

  auto* eval = sub("eval", "value of a code at a point");
  eval->add_option("--g", gPath)->required();
  eval->add_option("--x", xPath)->required();
  eval->callback([&] {
    action = [&] { return Json{{"value", toJson(evalCode(json_io::codeFrom(readJson(gPath)), json_io::seqFrom(readJson(xPath))))}}; };
  });

  auto* inf = sub("inf", "exact range of a code over the cylinder of a node");
  inf->add_option("--g", gPath)->required();
  inf->add_option("--t", tText, "node as comma-separated naturals");
  inf->callback([&] {
    action = [&] {
      auto c = json_io::codeFrom(readJson(gPath));
      Node t = parseNode(tText);
      auto r = rangeOverCylinder(c, t);
      auto [w, v] = minimizingWitness(c, Cylinder{t, {}, std::nullopt});
      return Json{{"inf", toJson(r.lo)}, {"sup", r.hi ? toJson(*r.hi) : Json(nullptr)}, {"witness", toJson(w)}};
    };
  });

  auto* dominates = sub("dominates", "does the code dominate the exit function of a chain");
  dominates->add_option("--g", gPath)->required();
  dominates->add_option("--tree", treePath)->required();
  dominates->callback([&] {
    action = [&] {
      auto r = checkDominatesExit(json_io::codeFrom(readJson(gPath)), json_io::treeFrom(readJson(treePath)),
                                  cfg.bound("level", 4096));
      if (std::holds_alternative<bool>(r)) return Json{{"dominates", std::get<bool>(r)}};
      const auto& ce = std::get<DominationCounterexample>(r);
      return Json{{"dominates", false},
                  {"counterexample",
                   {{"cylinder", toJson(ce.cylinder)}, {"excluded", toJson(ce.excluded)}, {"level", ce.level},
                    {"infimum", toJson(ce.infimum)}, {"witness", toJson(ce.witness)}}}};
    };
  });

  auto* decode = sub("decode", "candidates for a from any code dominating its exit function");
  decode->add_option("--g", gPath)->required();
  decode->add_option("--N", bigN);
  decode->add_option("--l0", l0);
  decode->add_option("--child-bound", childBound);
  decode->add_option("--candidate-bound", candidateBound);
  decode->callback([&] {
    action = [&] {
      DecodeParams p{bigN, l0, childBound, candidateBound};
      return Json{{"candidates", candidatesJson(decodeFromDomination(json_io::codeFrom(readJson(gPath)), p))}};
    };
  });

  auto* horiz = sub("horiz-decode", "recover a subset of a finite alphabet");
  horiz->add_option("--g", gPath)->required();
  horiz->add_option("--alphabet", alphabet);
  horiz->add_option("--hidden", hiddenPath, "JSON array: the hidden subset, consulted only to pick counterexamples");
  horiz->callback([&] {
    action = [&] {
      auto g = json_io::codeFrom(readJson(gPath));
      auto X = alphabetOf(alphabet);
      std::size_t bound = cfg.bound("iterations", alphabet + 1);
      if (!hiddenPath.empty()) {
        auto hidden = json_io::natSetFrom(readJson(hiddenPath));
        return Json{{"result", horizJson(horizDecode(g, X, [&](const Nat& z) { return hidden.count(z) > 0; }, bound))}};
      }
      Json all = Json::array();
      for (const auto& r : horizCandidates(g, X, bound)) all.push_back(horizJson(r));
      return Json{{"candidates", all}};
    };
  });

  auto* rank = sub("reach-rank", "reachability rank of every state");
  rank->add_option("--s", sPath)->required();
  rank->add_option("--t", tText);
  rank->callback([&] {
    action = [&] {
      auto S = json_io::automatonFrom(readJson(sPath));
      auto ranks = stateRanks(S);
      Json out{{"ranks", ranksJson(ranks)}};
      if (!tText.empty()) {
        auto r = ranks.at(S.run(parseNode(tText)));
        out["node"] = r ? Json(*r) : Json(nullptr);
      }
      return out;
    };
  });

  auto* block = sub("block", "side condition blocking every unreachable state");
  block->add_option("--s", sPath)->required();
  block->callback([&] {
    action = [&] { return Json{{"side", toJson(blockingH(json_io::automatonFrom(readJson(sPath))))}}; };
  });

  auto* extend = sub("extend", "A-avoiding extension into the accepted set");
  extend->add_option("--s", sPath)->required();
  extend->add_option("--a", aPath)->required();
  extend->add_option("--t", tText);
  extend->add_option("--side", hPath, "side condition JSON (default 0)");
  extend->callback([&] {
    action = [&] {
      auto S = json_io::automatonFrom(readJson(sPath));
      auto A = asetOf(json_io::seqFrom(readJson(aPath)), cfg);
      HFun h = hPath.empty() ? HFun{} : json_io::hfunFrom(readJson(hPath));
      return Json{{"stem", toJson(findExtension(S, parseNode(tText), A, h, cfg.bound("witness", 1000000)))}};
    };
  });

  auto* fuseCmd = sub("fuse", "fusion certificate for (a, model, N)");
  fuseCmd->add_option("--a", aPath)->required();
  fuseCmd->add_option("--model", modelPath)->required();
  fuseCmd->add_option("--N", n)->required();
  fuseCmd->callback([&] {
    action = [&] {
      auto a = json_io::seqFrom(readJson(aPath));
      return toJson(fuse(a, json_io::modelFrom(readJson(modelPath)), n, fusionBounds(cfg)));
    };
  });

  auto* check = sub("check-cert", "independently re-validate a certificate");
  check->add_option("--a", aPath)->required();
  check->add_option("--model", modelPath)->required();
  check->add_option("--N", n)->required();
  check->add_option("--cert", certPath)->required();
  check->callback([&] {
    action = [&] {
      auto v = checkCertificate(json_io::seqFrom(readJson(aPath)), json_io::modelFrom(readJson(modelPath)), n,
                                json_io::certificateFrom(readJson(certPath)));
      if (!v.ok) {
        std::string all;
        for (const auto& f : v.failures) all += (all.empty() ? "" : "; ") + f;
        throw DomainError("CertificateRejected", all);
      }
      return Json{{"ok", true}};
    };
  });

  auto* ensure = sub("ensure", "does the condition ensure j(x) = m");
  ensure->add_option("--j", gPath)->required();
  ensure->add_option("--m", m)->required();
  ensure->add_option("--p", pPath)->required();
  ensure->add_option("--a", aPath, "sequence coding A (default constant 0)");
  ensure->callback([&] {
    action = [&] {
      auto j = json_io::codeFrom(readJson(gPath));
      auto p = json_io::conditionFrom(readJson(pPath));
      auto A = asetOf(aPath.empty() ? EventuallyPeriodicSeq::constant(0) : json_io::seqFrom(readJson(aPath)), cfg);
      auto gb = gameBounds(cfg);
      if (auto eta = ensures(p, j, m, A, gb)) {
        Json moves = Json::array();
        Condition pos = p;
        for (int i = 0; i < 3; ++i) {
          pos = eta->nextMove(pos);
          moves.push_back(toJson(pos));
        }
        return Json{{"ensures", true}, {"m", m}, {"lock", toJson(eta->lock())}, {"strategyMoves", moves}};
      }
      return Json{{"ensures", false}, {"m", m}, {"refutingPlay", toJson(*refutingPlay(p, j, m, gb))}};
    };
  });

  auto* playFusionCmd = sub("play-fusion", "fusion driven by Player II strategies");
  playFusionCmd->add_option("--a", aPath)->required();
  playFusionCmd->add_option("--g", gPath)->required();
  playFusionCmd->add_option("--N", n)->required();
  playFusionCmd->callback([&] {
    action = [&] {
      FunctionFamilyCode g{json_io::codeFrom(readJson(gPath))};
      return toJson(playFusion(json_io::seqFrom(readJson(aPath)), g, n, gameBounds(cfg)));
    };
  });

  auto* limit = sub("limit-ensure", "alternation for the limit of a finite family");
  limit->add_option("--fam", famPath, "JSON {\"codes\": [...]}")->required();
  limit->add_option("--p", pPath)->required();
  limit->add_option("--a", aPath, "sequence coding A (default constant 0)");
  limit->callback([&] {
    action = [&] {
      Baire1Family fam;
      Json doc = readJson(famPath);
      for (const auto& c : json_io::field(doc, "codes")) fam.codes.push_back(json_io::codeFrom(c));
      auto A = asetOf(aPath.empty() ? EventuallyPeriodicSeq::constant(0) : json_io::seqFrom(readJson(aPath)), cfg);
      auto r = limitEnsure(fam, json_io::conditionFrom(readJson(pPath)), A, gameBounds(cfg));
      Json trace = Json::array();
      for (const auto& s : r.trace) trace.push_back({{"n", s.n}, {"m", toJson(s.m)}, {"stemLength", s.stemLength}});
      return Json{{"m", toJson(r.m)}, {"condition", toJson(r.p)}, {"trace", trace}, {"blocked", r.blocked}};
    };
  });

  auto* normCmd = sub("crrel-norm", "norm of a finite challenge-response relation");
  normCmd->add_option("--r", rPath)->required();
  normCmd->callback([&] { action = [&] { return Json{{"norm", norm(json_io::relationFrom(readJson(rPath)))}}; }; });

  auto* morph = sub("crrel-morph", "check a morphism between two relations");
  morph->add_option("--r1", rPath)->required();
  morph->add_option("--r2", r2Path)->required();
  morph->add_option("--w", wPath)->required();
  morph->callback([&] {
    action = [&] {
      auto a = json_io::relationFrom(readJson(rPath));
      auto b = json_io::relationFrom(readJson(r2Path));
      bool ok = checkMorphism(a, b, json_io::morphismFrom(readJson(wPath)));
      return Json{{"morphism", ok}, {"normA", norm(a)}, {"normB", norm(b)}};
    };
  });

  auto* genCmd = sub("gen", "seeded random instance");
  genCmd->add_option("--kind", kind, "seq | code | bitcode | automaton | relation | model | family")->required();
  genCmd->callback([&] {
    action = [&] {
      gen::Rng rng(cfg.seed);
      if (kind == "seq") return toJson(gen::sequence(rng, 3, 4, 9));
      if (kind == "code") return toJson(gen::code(rng, 2, 3, 4));
      if (kind == "bitcode") return toJson(gen::code(rng, 2, 2, 3, true));
      if (kind == "automaton") return toJson(gen::automaton(rng, 5, 4));
      if (kind == "relation") return toJson(gen::relation(rng, 5));
      if (kind == "model") return toJson(gen::toyModel(rng, 8));
      if (kind == "family") {
        Json codes = Json::array();
        for (auto k = 1 + gen::below(rng, 4); k > 0; --k) codes.push_back(toJson(gen::code(rng, 2, 2, 3, true)));
        return Json{{"codes", codes}};
      }
      throw DomainError("InvalidInput", "unknown instance kind \"" + kind + "\"");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const Json& doc) {
    std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out);
      f << text;
    }
  };
  try {
    cfg.parsedBounds();
    emit(json_io::document(action()));
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    emit(json_io::document({{"error", {{"kind", e.kind()}, {"message", e.what()}}}}));
    return 1;
  } catch (const Json::exception& e) {
    emit(json_io::document({{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}}));
    return 1;
  }
}
