#pragma once

#include <optional>
#include <string_view>

#include "mtmorph/features.hpp"
#include "mtmorph/grammar.hpp"

namespace mtmorph::arabic {

enum class Mode { Singular, Plural, Diminutive };

/// "sing", "pl", "dim"
std::optional<Mode> parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

/// sing = {number=sing, form=base}, pl = {number=pl}, dim = {number=sing, form=dim}
FeatureStructure mode_features(Mode mode);

struct BuiltinGrammarSet {
  Grammar multi_tape;   // R4..R11 over pattern, root, vocalism
  Grammar single_tape;  // R1..R3 over the singular stem
  Lexicon lexicon;
};

/// Parsed once on first use.
const BuiltinGrammarSet& builtin();

std::string_view grammar_text();
std::string_view single_tape_grammar_text();
std::string_view lexicon_text();
std::string_view corpus_text();

}  // namespace mtmorph::arabic
