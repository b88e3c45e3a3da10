#include "mtmorph/arabic.hpp"

#include "builtin_data.hpp"

namespace mtmorph::arabic {

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "sing") return Mode::Singular;
  if (name == "pl") return Mode::Plural;
  if (name == "dim") return Mode::Diminutive;
  return std::nullopt;
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Singular: return "sing";
    case Mode::Plural: return "pl";
    case Mode::Diminutive: return "dim";
  }
  return "?";
}

FeatureStructure mode_features(Mode mode) {
  switch (mode) {
    case Mode::Singular: return {{"number", Value::atom("sing")}, {"form", Value::atom("base")}};
    case Mode::Plural: return {{"number", Value::atom("pl")}};
    case Mode::Diminutive: return {{"number", Value::atom("sing")}, {"form", Value::atom("dim")}};
  }
  return {};
}

std::string_view grammar_text() { return data::kArabicGrammar; }
std::string_view single_tape_grammar_text() { return data::kArabicSingleTapeGrammar; }
std::string_view lexicon_text() { return data::kArabicLexicon; }
std::string_view corpus_text() { return data::kTable1Corpus; }

const BuiltinGrammarSet& builtin() {
  static const BuiltinGrammarSet set = [] {
    Grammar multi = parse_grammar(grammar_text());
    Grammar single = parse_grammar(single_tape_grammar_text());
    Lexicon lexicon = parse_lexicon(lexicon_text(), multi);
    return BuiltinGrammarSet{std::move(multi), std::move(single), std::move(lexicon)};
  }();
  return set;
}

}  // namespace mtmorph::arabic
