#pragma once

// Shared test helpers: random toy grammars, result-set keys, and replay
// checks for emitted partitions.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mtmorph/engine.hpp"
#include "mtmorph/grammar.hpp"
#include "mtmorph/oracle.hpp"

namespace mtmorph::testing {

inline SegmentString seg(std::string_view text, const Alphabet& a = Alphabet::arabic()) {
  return a.segments(text);
}

inline TapeTuple tapes(std::initializer_list<std::string_view> forms, const Alphabet& a = Alphabet::arabic()) {
  TapeTuple t;
  for (auto f : forms) t.push_back(f == "0" ? SegmentString{} : a.segments(f));
  return t;
}

using ResultKeys = std::set<std::pair<std::string, std::string>>;

inline ResultKeys keys(const std::vector<SynthesisResult>& results, std::size_t max_len = SIZE_MAX) {
  ResultKeys out;
  for (const auto& r : results)
    if (r.surface.size() <= max_len) out.emplace(to_text(r.surface), r.features.key());
  return out;
}

inline ResultKeys keys(const std::vector<oracle::SurfaceForm>& forms) {
  ResultKeys out;
  for (const auto& f : forms) out.emplace(to_text(f.surface), f.features.key());
  return out;
}

inline std::set<std::string> surfaces(const std::vector<SynthesisResult>& results) {
  std::set<std::string> out;
  for (const auto& r : results) out.insert(to_text(r.surface));
  return out;
}

/// True if the step's LEX and SURF reproduce its slices under its own
/// bindings, without binding anything new.
inline bool replays(const Step& step, const Rule& rule) {
  for (std::size_t t = 0; t < step.lex.size(); ++t) {
    auto ms = match_expr(rule.lex[t], step.lex[t], 0, step.bindings);
    bool ok = std::any_of(ms.begin(), ms.end(), [&](const ExprMatch& m) {
      return m.length == step.lex[t].size() && m.bindings == step.bindings;
    });
    if (!ok) return false;
  }
  auto ms = match_expr(rule.surf, step.surf, 0, step.bindings);
  return std::any_of(ms.begin(), ms.end(), [&](const ExprMatch& m) {
    return m.length == step.surf.size() && m.bindings == step.bindings;
  });
}

inline bool partition_sound(const Partition& p, const TapeTuple& lexical, const SegmentString& surface,
                            const Grammar& g) {
  if (!covers(p, lexical, surface)) return false;
  for (const auto& step : p.steps) {
    const Rule* r = g.find_rule(step.rule);
    if (!r || !replays(step, *r)) return false;
  }
  return true;
}

/// Random grammar over consonants {b, d} and vowels {a, i}, 1 or 2 tapes,
/// 2 to 4 rules. The first rules copy single segments so that most inputs
/// have at least one partition; the rest are arbitrary.
class ToyGrammarGenerator {
 public:
  explicit ToyGrammarGenerator(unsigned seed) : rng_(seed) {}

  Grammar grammar() {
    Grammar g;
    std::size_t n = pick(1, 2);
    for (std::size_t t = 0; t < n; ++t) g.tape_names.push_back("t" + std::to_string(t + 1));
    g.alphabet = Alphabet::from_sets("bd", "ai");

    std::size_t nrules = pick(2, 4);
    for (std::size_t k = 0; k < nrules; ++k) {
      Rule r = k < 2 ? copy_rule(g, k) : random_rule(g);
      r.id = "T" + std::to_string(k);
      g.rules.push_back(std::move(r));
    }
    return g;
  }

  /// Random lexical tuple with total length at most `max_total`.
  TapeTuple lexical(const Grammar& g, std::size_t max_total = 6) {
    TapeTuple out(g.ntapes());
    std::size_t total = pick(0, max_total);
    for (std::size_t i = 0; i < total; ++i) out[pick(0, g.ntapes() - 1)].push_back(any_segment(g));
    return out;
  }

  std::vector<FeatureStructure> morpheme_features(const Grammar& g) {
    std::vector<FeatureStructure> out(g.ntapes());
    if (chance(0.4)) out[0].set("number", Value::variable("N"));
    return out;
  }

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

 private:
  Segment any_segment(const Grammar& g) {
    const auto& pool = chance(0.5) ? g.alphabet.consonants() : g.alphabet.vowels();
    return pool[pick(0, pool.size() - 1)];
  }

  Rule copy_rule(const Grammar& g, std::size_t k) {
    Rule r;
    VarClass cls = k == 0 ? VarClass::C : VarClass::V;
    std::size_t tape = pick(0, g.ntapes() - 1);
    r.llc = r.rlc = ExprTuple(g.ntapes(), Expr::any_context());
    r.lex = ExprTuple(g.ntapes(), Expr::epsilon());
    r.lex[tape] = Expr::of({Item::variable(cls, 1)});
    r.lsc = r.rsc = Expr::any_context();
    r.surf = Expr::of({Item::variable(cls, 1)});
    r.features = random_features();
    return r;
  }

  Item random_item(const Grammar& g, std::vector<VarRef>& vars, bool allow_optional) {
    double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (allow_optional && roll < 0.15) {
      std::vector<Item> inner{random_item(g, vars, false)};
      if (chance(0.3)) inner.push_back(random_item(g, vars, false));
      return Item::optional(std::move(inner));
    }
    if (roll < 0.55) {
      VarRef v{chance(0.5) ? VarClass::C : VarClass::V, static_cast<int>(pick(1, 2))};
      vars.push_back(v);
      return Item::variable(v.cls, v.index);
    }
    return Item::lit(any_segment(g));
  }

  Expr random_expr(const Grammar& g, std::vector<VarRef>& vars, std::size_t max_items) {
    std::vector<Item> items;
    std::size_t count = pick(1, max_items);
    for (std::size_t i = 0; i < count; ++i) items.push_back(random_item(g, vars, true));
    return Expr::of(std::move(items));
  }

  Expr random_context(const Grammar& g, std::vector<VarRef>& vars, double p_any) {
    if (chance(p_any)) return Expr::any_context();
    return random_expr(g, vars, 1);
  }

  Expr random_surface(const Grammar& g, const std::vector<VarRef>& lexvars) {
    std::vector<Item> items;
    std::size_t count = pick(0, 3);
    for (std::size_t i = 0; i < count; ++i) {
      double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      Item item;
      if (roll < 0.5 && !lexvars.empty()) {
        VarRef v = lexvars[pick(0, lexvars.size() - 1)];
        item = Item::variable(v.cls, v.index);
      } else if (roll < 0.6) {
        item = Item::variable(chance(0.5) ? VarClass::C : VarClass::V, 7);  // surface-only
      } else {
        item = Item::lit(any_segment(g));
      }
      items.push_back(chance(0.1) ? Item::optional({item}) : item);
    }
    return Expr::of(std::move(items));
  }

  FeatureStructure random_features() {
    double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (roll < 0.5) return {};
    return {{"number", Value::atom(roll < 0.75 ? "sg" : "pl")}};
  }

  Rule random_rule(const Grammar& g) {
    Rule r;
    std::vector<VarRef> vars;
    std::size_t n = g.ntapes();
    std::size_t anchor = pick(0, n - 1);
    for (std::size_t t = 0; t < n; ++t) {
      r.lex.push_back(t == anchor || chance(0.4) ? random_expr(g, vars, 2) : Expr::epsilon());
      r.llc.push_back(random_context(g, vars, 0.75));
      r.rlc.push_back(random_context(g, vars, 0.75));
    }
    // A lexical form of optional groups only could match nothing.
    if (std::all_of(r.lex[anchor].items.begin(), r.lex[anchor].items.end(),
                    [](const Item& i) { return i.kind == Item::Kind::Optional; }))
      r.lex[anchor].items.push_back(Item::lit(any_segment(g)));
    r.lsc = random_context(g, vars, 0.8);
    r.rsc = random_context(g, vars, 0.8);
    r.surf = random_surface(g, vars);
    r.op = chance(0.35) ? Operator::Obligatory : Operator::Optional;
    r.features = random_features();
    return r;
  }

  std::mt19937 rng_;
};

// Random stems of at most five segments; equal forms share one morpheme.
inline Lexicon toy_lexicon(const Grammar& g, ToyGrammarGenerator& gen, std::size_t nstems) {
  Lexicon lex(g.ntapes());
  std::map<std::string, std::string> ids;  // tape:form -> id
  for (std::size_t s = 0; s < nstems; ++s) {
    TapeTuple t = gen.lexical(g, 5);
    auto mf = gen.morpheme_features(g);
    Stem stem;
    stem.id = "s" + std::to_string(s);
    for (std::size_t k = 0; k < g.ntapes(); ++k) {
      std::string key = std::to_string(k) + ":" + to_text(t[k]) + ":" + mf[k].key();
      auto it = ids.find(key);
      if (it == ids.end()) {
        std::string id = "m" + std::to_string(ids.size());
        lex.add_morpheme({k, id, t[k], mf[k]});
        it = ids.emplace(key, id).first;
      }
      stem.morphemes.push_back(it->second);
      stem.listed.push_back(k);
    }
    if (!lex.find_stem_by_morphemes(stem.morphemes)) lex.add_stem(std::move(stem));
  }
  return lex;
}

}  // namespace mtmorph::testing
