#include "mtmorph/morphotactics.hpp"

#include <algorithm>

namespace mtmorph {

MorphotacticGrammar::MorphotacticGrammar(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

void MorphotacticGrammar::add_constraint(CooccurrenceConstraint c) {
  auto declared = [this](std::size_t tape, const std::string& attribute) {
    if (tape >= lexicon_.ntapes()) return false;
    auto ms = lexicon_.on_tape(tape);
    return std::any_of(ms.begin(), ms.end(), [&](const Morpheme* m) { return m->features.find(attribute); });
  };
  if (!declared(c.tape_a, c.attribute_a) || !declared(c.tape_b, c.attribute_b))
    throw std::invalid_argument("constraint references an undeclared tape or attribute");
  constraints_.push_back(std::move(c));
}

namespace {

bool satisfies(const Stem& stem, const Lexicon& lexicon, const CooccurrenceConstraint& c) {
  const Value* a = lexicon.find_morpheme(stem.morphemes[c.tape_a])->features.find(c.attribute_a);
  const Value* b = lexicon.find_morpheme(stem.morphemes[c.tape_b])->features.find(c.attribute_b);
  if (!a || !b) return true;
  FeatureStructure fa{{"v", *a}}, fb{{"v", *b}};
  return unify(fa.renamed("@a"), fb.renamed("@b")).has_value();
}

}  // namespace

std::vector<Analysis> filter(std::span<const Analysis> raw, const MorphotacticGrammar& grammar) {
  const Lexicon& lexicon = grammar.lexicon();
  std::vector<Analysis> out;
  for (const Analysis& a : raw) {
    const Stem* stem = lexicon.find_stem_by_morphemes(a.morphemes);
    if (!stem) continue;
    bool ok = std::all_of(grammar.constraints().begin(), grammar.constraints().end(),
                          [&](const auto& c) { return satisfies(*stem, lexicon, c); });
    if (!ok) continue;
    auto features = unify(a.features, stem->features.renamed("@stem"));
    if (!features) continue;
    Analysis kept = a;
    kept.stem = stem->id;
    kept.gloss = stem->gloss;
    kept.features = features->canonical();
    out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace mtmorph
