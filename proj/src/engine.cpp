#include "mtmorph/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace mtmorph {

namespace {

template <typename T>
void push_unique(std::vector<T>& out, T value) {
  if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(std::move(value));
}

bool match_single(const Item& item, std::span<const Segment> input, std::size_t pos, Bindings& b) {
  if (pos >= input.size()) return false;
  const Segment& s = input[pos];
  if (item.kind == Item::Kind::Literal) return s == item.literal;
  if (!accepts(item.var.cls, s.kind)) return false;
  auto [it, inserted] = b.emplace(item.var, s);
  return inserted || it->second == s;
}

void match_seq(std::span<const Item> items, std::size_t i, std::span<const Segment> input,
               std::size_t at, std::size_t pos, const Bindings& b, std::vector<ExprMatch>& out) {
  if (i == items.size()) {
    push_unique(out, ExprMatch{pos - at, b});
    return;
  }
  const Item& item = items[i];
  if (item.kind == Item::Kind::Optional) {
    match_seq(items, i + 1, input, at, pos, b, out);
    Bindings taken = b;
    std::size_t p = pos;
    for (const Item& inner : item.group) {
      if (!match_single(inner, input, p, taken)) return;
      ++p;
    }
    match_seq(items, i + 1, input, at, p, taken, out);
    return;
  }
  Bindings next = b;
  if (match_single(item, input, pos, next)) match_seq(items, i + 1, input, at, pos + 1, next, out);
}

/// Bindings under which `expr` matches input[k..end) for some k.
std::vector<Bindings> suffix_bindings(const Expr& expr, std::span<const Segment> input,
                                      std::size_t end, const Bindings& b) {
  if (expr.any) return {b};
  std::vector<Bindings> out;
  auto left = input.first(end);
  for (std::size_t start = 0; start <= end; ++start)
    for (auto& m : match_expr(expr, left, start, b))
      if (start + m.length == end) push_unique(out, std::move(m.bindings));
  return out;
}

/// Bindings under which `expr` matches some prefix of input[at..].
std::vector<Bindings> prefix_bindings(const Expr& expr, std::span<const Segment> input,
                                      std::size_t at, const Bindings& b) {
  if (expr.any) return {b};
  std::vector<Bindings> out;
  for (auto& m : match_expr(expr, input, at, b)) push_unique(out, std::move(m.bindings));
  return out;
}

struct LexicalOption {
  std::vector<std::size_t> consumed;
  Bindings bindings;
  friend bool operator==(const LexicalOption&, const LexicalOption&) = default;
};

/// LEX matched tape-wise at `positions`, then LLC against the consumed
/// material and RLC against the remainder, sharing one binding set.
/// `exact`, when given, pins the consumed length on every tape.
std::vector<LexicalOption> lexical_options(const Rule& rule, const TapeTuple& tapes,
                                           std::span<const std::size_t> positions,
                                           const Bindings& bindings,
                                           const std::vector<std::size_t>* exact = nullptr) {
  std::vector<LexicalOption> frontier{{{}, bindings}};
  for (std::size_t t = 0; t < tapes.size(); ++t) {
    std::vector<LexicalOption> next;
    for (const auto& opt : frontier) {
      for (auto& m : match_expr(rule.lex[t], tapes[t], positions[t], opt.bindings)) {
        if (exact && m.length != (*exact)[t]) continue;
        auto consumed = opt.consumed;
        consumed.push_back(m.length);
        push_unique(next, LexicalOption{std::move(consumed), std::move(m.bindings)});
      }
    }
    frontier = std::move(next);
  }
  for (std::size_t t = 0; t < tapes.size(); ++t) {
    std::vector<LexicalOption> next;
    for (const auto& opt : frontier)
      for (auto& b : suffix_bindings(rule.llc[t], tapes[t], positions[t], opt.bindings))
        push_unique(next, LexicalOption{opt.consumed, std::move(b)});
    frontier = std::move(next);
  }
  for (std::size_t t = 0; t < tapes.size(); ++t) {
    std::vector<LexicalOption> next;
    for (const auto& opt : frontier)
      for (auto& b : prefix_bindings(rule.rlc[t], tapes[t], positions[t] + opt.consumed[t], opt.bindings))
        push_unique(next, LexicalOption{opt.consumed, std::move(b)});
    frontier = std::move(next);
  }
  return frontier;
}

std::size_t total(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

struct Realization {
  SegmentString segments;
  Bindings bindings;
  friend bool operator==(const Realization&, const Realization&) = default;
};

void generate_seq(std::span<const Item> items, std::size_t i, const Alphabet& alphabet,
                  Realization& cur, std::vector<Realization>& out) {
  if (i == items.size()) {
    push_unique(out, cur);
    return;
  }
  const Item& item = items[i];
  switch (item.kind) {
    case Item::Kind::Literal:
      cur.segments.push_back(item.literal);
      generate_seq(items, i + 1, alphabet, cur, out);
      cur.segments.pop_back();
      return;
    case Item::Kind::Variable: {
      if (auto it = cur.bindings.find(item.var); it != cur.bindings.end()) {
        cur.segments.push_back(it->second);
        generate_seq(items, i + 1, alphabet, cur, out);
        cur.segments.pop_back();
        return;
      }
      const auto& members = item.var.cls == VarClass::C ? alphabet.consonants() : alphabet.vowels();
      for (const Segment& s : members) {
        cur.bindings.emplace(item.var, s);
        cur.segments.push_back(s);
        generate_seq(items, i + 1, alphabet, cur, out);
        cur.segments.pop_back();
        cur.bindings.erase(item.var);
      }
      return;
    }
    case Item::Kind::Optional: {
      generate_seq(items, i + 1, alphabet, cur, out);
      // Expand the group in place as a flat item list.
      std::vector<Item> expanded(item.group.begin(), item.group.end());
      expanded.insert(expanded.end(), items.begin() + static_cast<std::ptrdiff_t>(i) + 1, items.end());
      generate_seq(expanded, 0, alphabet, cur, out);
      return;
    }
  }
}

/// Every segment string `expr` can produce under `bindings`; unbound
/// variables range over their class in the alphabet.
std::vector<Realization> generate_expr(const Expr& expr, const Bindings& bindings,
                                       const Alphabet& alphabet) {
  std::vector<Realization> out;
  Realization cur{{}, bindings};
  generate_seq(expr.items, 0, alphabet, cur, out);
  return out;
}

std::string step_suffix(std::size_t k) { return "@s" + std::to_string(k); }

/// Depth-first partition search. With a target surface the surface side
/// is matched; otherwise it is generated and right surface contexts are
/// checked once the whole surface is known.
class PartitionSearch {
 public:
  using Sink = std::function<void(const Partition&, const SegmentString&, const FeatureStructure&)>;

  PartitionSearch(const Grammar& grammar, const TapeTuple& lexical, const SegmentString* target, Sink sink)
      : grammar_(grammar), lexical_(lexical), target_(target), sink_(std::move(sink)),
        positions_(lexical.size(), 0) {}

  void run(const FeatureStructure& initial) { descend(initial); }

 private:
  struct Deferred {
    std::size_t surf_position;
    const Expr* rsc;
    Bindings bindings;
  };

  bool at_end() const {
    for (std::size_t t = 0; t < lexical_.size(); ++t)
      if (positions_[t] != lexical_[t].size()) return false;
    return true;
  }

  void complete(const FeatureStructure& features) {
    if (target_ && emitted_.size() != target_->size()) return;
    for (const auto& d : deferred_)
      if (prefix_bindings(*d.rsc, emitted_, d.surf_position, d.bindings).empty()) return;
    Partition partition{steps_};
    if (!check_obligatory(partition, grammar_, features).empty()) return;
    sink_(partition, emitted_, features);
  }

  void descend(const FeatureStructure& features) {
    if (at_end()) {
      complete(features);
      return;
    }
    for (const Rule& rule : grammar_.rules) {
      auto step_features = unify(features, rule.features.renamed(step_suffix(steps_.size())));
      if (!step_features) continue;
      for (const auto& lex : lexical_options(rule, lexical_, positions_, {})) {
        if (total(lex.consumed) == 0) continue;
        for (const auto& real : surface_options(rule, lex.bindings)) apply(rule, lex, real, *step_features);
      }
    }
  }

  struct SurfaceOption {
    SegmentString segments;
    Bindings bindings;
    bool deferred_rsc;
    friend bool operator==(const SurfaceOption&, const SurfaceOption&) = default;
  };

  std::vector<SurfaceOption> surface_options(const Rule& rule, const Bindings& bindings) const {
    std::vector<SurfaceOption> out;
    std::size_t here = emitted_.size();
    for (const auto& b : suffix_bindings(rule.lsc, emitted_, here, bindings)) {
      if (target_) {
        for (const auto& m : match_expr(rule.surf, *target_, here, b)) {
          SegmentString slice(target_->begin() + static_cast<std::ptrdiff_t>(here),
                              target_->begin() + static_cast<std::ptrdiff_t>(here + m.length));
          for (auto& rb : prefix_bindings(rule.rsc, *target_, here + m.length, m.bindings))
            push_unique(out, SurfaceOption{slice, std::move(rb), false});
        }
      } else {
        for (auto& real : generate_expr(rule.surf, b, grammar_.alphabet))
          push_unique(out, SurfaceOption{std::move(real.segments), std::move(real.bindings), !rule.rsc.any});
      }
    }
    return out;
  }

  void apply(const Rule& rule, const LexicalOption& lex, const SurfaceOption& surf,
             const FeatureStructure& features) {
    Step step;
    step.rule = rule.id;
    step.bindings = surf.bindings;
    for (std::size_t t = 0; t < lexical_.size(); ++t) {
      auto begin = lexical_[t].begin() + static_cast<std::ptrdiff_t>(positions_[t]);
      step.lex.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(lex.consumed[t]));
    }
    step.surf = surf.segments;

    std::size_t surf_before = emitted_.size();
    for (std::size_t t = 0; t < lexical_.size(); ++t) positions_[t] += lex.consumed[t];
    emitted_.insert(emitted_.end(), surf.segments.begin(), surf.segments.end());
    steps_.push_back(std::move(step));
    if (surf.deferred_rsc) deferred_.push_back({emitted_.size(), &rule.rsc, surf.bindings});

    descend(features);

    if (surf.deferred_rsc) deferred_.pop_back();
    steps_.pop_back();
    emitted_.resize(surf_before);
    for (std::size_t t = 0; t < lexical_.size(); ++t) positions_[t] -= lex.consumed[t];
  }

  const Grammar& grammar_;
  const TapeTuple& lexical_;
  const SegmentString* target_;
  Sink sink_;
  std::vector<std::size_t> positions_;
  SegmentString emitted_;
  std::vector<Step> steps_;
  std::vector<Deferred> deferred_;
};

void check_arity(const TapeTuple& lexical, std::span<const FeatureStructure> morpheme_features,
                 const Grammar& grammar) {
  if (lexical.size() != grammar.ntapes())
    throw ArityError("lexical tuple has " + std::to_string(lexical.size()) + " tapes, grammar has " +
                     std::to_string(grammar.ntapes()));
  if (!morpheme_features.empty() && morpheme_features.size() != grammar.ntapes())
    throw ArityError("expected one morpheme feature structure per tape");
}

/// Constraints plus the features of every morpheme that contributes
/// segments, renamed apart.
std::optional<FeatureStructure> initial_features(const TapeTuple& lexical,
                                                 std::span<const FeatureStructure> morpheme_features,
                                                 const FeatureStructure& constraints) {
  std::optional<FeatureStructure> fs = constraints.renamed("@x");
  for (std::size_t t = 0; fs && t < morpheme_features.size(); ++t)
    if (!lexical[t].empty()) fs = unify(*fs, morpheme_features[t].renamed("@m" + std::to_string(t)));
  return fs;
}

}  // namespace

std::vector<ExprMatch> match_expr(const Expr& expr, std::span<const Segment> input, std::size_t at,
                                  const Bindings& bindings) {
  if (expr.any) return {ExprMatch{0, bindings}};
  std::vector<ExprMatch> out;
  if (at > input.size()) return out;
  match_seq(expr.items, 0, input, at, at, bindings, out);
  return out;
}

std::vector<StepOption> license_step(const Rule& rule, const TapeTuple& lexical,
                                     std::span<const std::size_t> positions,
                                     std::span<const Segment> surface, std::size_t surf_position,
                                     const Bindings& bindings) {
  if (rule.lex.size() != lexical.size() || positions.size() != lexical.size())
    throw ArityError("rule " + rule.id + " does not match the number of lexical tapes");
  std::vector<StepOption> out;
  for (const auto& lex : lexical_options(rule, lexical, positions, bindings)) {
    if (total(lex.consumed) == 0) continue;
    for (const auto& b : suffix_bindings(rule.lsc, surface, surf_position, lex.bindings))
      for (const auto& m : match_expr(rule.surf, surface, surf_position, b))
        for (auto& rb : prefix_bindings(rule.rsc, surface, surf_position + m.length, m.bindings))
          push_unique(out, StepOption{lex.consumed, m.length, std::move(rb)});
  }
  return out;
}

std::vector<Violation> check_obligatory(const Partition& partition, const Grammar& grammar,
                                        const FeatureStructure& analysis_features) {
  std::vector<Violation> violations;
  const std::size_t n = grammar.ntapes();
  TapeTuple tapes = partition.lexical(n);
  std::vector<std::size_t> positions(n, 0);

  for (std::size_t i = 0; i < partition.steps.size(); ++i) {
    const Step& step = partition.steps[i];
    std::vector<std::size_t> lengths;
    for (const auto& slice : step.lex) lengths.push_back(slice.size());

    std::vector<std::pair<const Rule*, bool>> triggered;  // rule, satisfied
    for (const Rule& rule : grammar.rules) {
      if (rule.op != Operator::Obligatory || rule.lex.size() != n) continue;
      if (!unify(analysis_features, rule.features.renamed("@ob"))) continue;
      auto thetas = lexical_options(rule, tapes, positions, {}, &lengths);
      if (thetas.empty()) continue;
      bool satisfied = std::all_of(thetas.begin(), thetas.end(), [&](const LexicalOption& theta) {
        auto ms = match_expr(rule.surf, step.surf, 0, theta.bindings);
        return std::any_of(ms.begin(), ms.end(), [&](auto& m) { return m.length == step.surf.size(); });
      });
      triggered.emplace_back(&rule, satisfied);
    }
    for (const auto& [rule, satisfied] : triggered) {
      if (satisfied) continue;
      Violation v{i, rule->id, {}};
      for (const auto& [other, ok] : triggered)
        if (ok && other != rule) {
          v.competitor = other->id;
          break;
        }
      violations.push_back(std::move(v));
    }
    for (std::size_t t = 0; t < n && t < lengths.size(); ++t) positions[t] += lengths[t];
  }
  return violations;
}

std::vector<SynthesisResult> synthesize(const TapeTuple& lexical,
                                        std::span<const FeatureStructure> morpheme_features,
                                        const Grammar& grammar, const FeatureStructure& constraints,
                                        SynthesisOptions options) {
  check_arity(lexical, morpheme_features, grammar);
  auto initial = initial_features(lexical, morpheme_features, constraints);
  if (!initial) return {};

  std::map<std::string, SynthesisResult> results;
  PartitionSearch search(grammar, lexical, nullptr,
                         [&](const Partition& p, const SegmentString& surface, const FeatureStructure& fs) {
                           FeatureStructure canon = fs.canonical();
                           std::string key = to_text(surface) + '\t' + canon.key();
                           auto [it, fresh] = results.try_emplace(key);
                           if (fresh) it->second = SynthesisResult{surface, std::move(canon), p, {}};
                           else if (options.keep_all_partitions) it->second.alternatives.push_back(p);
                         });
  search.run(*initial);

  std::vector<SynthesisResult> out;
  for (auto& [key, r] : results) out.push_back(std::move(r));
  return out;
}

std::vector<Analysis> analyze(std::span<const Segment> surface, const Grammar& grammar,
                              const Lexicon& lexicon) {
  const std::size_t n = grammar.ntapes();
  std::vector<std::vector<const Morpheme*>> choices(n);
  for (std::size_t t = 0; t < n; ++t) {
    choices[t] = lexicon.on_tape(t);
    if (choices[t].empty()) return {};
  }
  SegmentString target(surface.begin(), surface.end());
  std::map<std::string, Analysis> results;

  std::vector<std::size_t> pick(n, 0);
  while (true) {
    TapeTuple lexical;
    std::vector<FeatureStructure> features;
    std::vector<std::string> ids;
    for (std::size_t t = 0; t < n; ++t) {
      const Morpheme* m = choices[t][pick[t]];
      lexical.push_back(m->form);
      features.push_back(m->features);
      ids.push_back(m->id);
    }
    if (auto initial = initial_features(lexical, features, {})) {
      PartitionSearch search(grammar, lexical, &target,
                             [&](const Partition& p, const SegmentString&, const FeatureStructure& fs) {
                               FeatureStructure canon = fs.canonical();
                               std::string key;
                               for (const auto& id : ids) key += id + '+';
                               key += '\t' + canon.key();
                               results.try_emplace(key, Analysis{ids, {}, {}, std::move(canon), p});
                             });
      search.run(*initial);
    }
    std::size_t t = 0;
    while (t < n && ++pick[t] == choices[t].size()) pick[t++] = 0;
    if (t == n) break;
  }

  std::vector<Analysis> out;
  for (auto& [key, a] : results) out.push_back(std::move(a));
  return out;
}

std::vector<SynthesisResult> synthesize_stem(const Grammar& grammar, const Lexicon& lexicon,
                                             std::string_view stem_id,
                                             const FeatureStructure& constraints,
                                             SynthesisOptions options) {
  const Stem* stem = lexicon.find_stem(stem_id);
  if (!stem) throw std::invalid_argument("unknown stem " + std::string(stem_id));
  auto merged = unify(constraints, stem->features.renamed("@stem"));
  if (!merged) return {};
  auto features = lexicon.morpheme_features(*stem);
  return synthesize(lexicon.lexical(*stem), features, grammar, *merged, options);
}

}  // namespace mtmorph
