#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtmorph/engine.hpp"
#include "mtmorph/grammar.hpp"

namespace mtmorph {

/// The values of two morpheme attributes within one stem must unify.
struct CooccurrenceConstraint {
  std::size_t tape_a = 0;
  std::string attribute_a;
  std::size_t tape_b = 0;
  std::string attribute_b;
};

/// Stem table of a lexicon plus optional co-occurrence constraints.
class MorphotacticGrammar {
 public:
  explicit MorphotacticGrammar(Lexicon lexicon);

  /// Throws std::invalid_argument unless both tapes exist and each
  /// attribute is carried by some morpheme on its tape.
  void add_constraint(CooccurrenceConstraint constraint);

  const Lexicon& lexicon() const noexcept { return lexicon_; }
  const std::vector<CooccurrenceConstraint>& constraints() const noexcept { return constraints_; }

 private:
  Lexicon lexicon_;
  std::vector<CooccurrenceConstraint> constraints_;
};

/// Keeps the analyses whose morphemes form a declared stem, whose
/// features unify with the stem's, and which satisfy every constraint.
/// Survivors carry the stem id, gloss and unified features.
std::vector<Analysis> filter(std::span<const Analysis> raw, const MorphotacticGrammar& grammar);

}  // namespace mtmorph
