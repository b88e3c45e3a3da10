#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtmorph/expr.hpp"
#include "mtmorph/features.hpp"
#include "mtmorph/rule.hpp"
#include "mtmorph/segment.hpp"

namespace mtmorph {

enum class ParseErrorKind {
  Syntax,
  ArityMismatch,
  UnknownSymbol,
  MisplacedAnyContext,
  DuplicateId,
  DanglingReference,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

struct Grammar {
  std::vector<std::string> tape_names;
  Alphabet alphabet = Alphabet::arabic();
  std::vector<Rule> rules;

  std::size_t ntapes() const noexcept { return tape_names.size(); }
  std::optional<std::size_t> tape_index(std::string_view name) const;
  const Rule* find_rule(std::string_view id) const;
};

struct Morpheme {
  std::size_t tape = 0;
  std::string id;
  SegmentString form;
  FeatureStructure features;
};

struct Stem {
  std::string id;
  std::vector<std::string> morphemes;  // indexed by tape
  std::vector<std::size_t> listed;     // tape order as written on the stem line
  FeatureStructure features;
  std::string gloss;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::size_t ntapes) : ntapes_(ntapes) {}

  /// Throws std::invalid_argument on duplicate ids or bad tape index.
  void add_morpheme(Morpheme morpheme);
  /// Throws std::invalid_argument on duplicate ids, dangling references,
  /// or a stem that does not name exactly one morpheme per tape.
  void add_stem(Stem stem);

  std::size_t ntapes() const noexcept { return ntapes_; }
  const std::vector<Morpheme>& morphemes() const noexcept { return morphemes_; }
  const std::vector<Stem>& stems() const noexcept { return stems_; }
  bool empty() const noexcept { return morphemes_.empty() && stems_.empty(); }

  const Morpheme* find_morpheme(std::string_view id) const;
  const Stem* find_stem(std::string_view id) const;
  /// The declared stem built from exactly these morphemes (per tape), if any.
  const Stem* find_stem_by_morphemes(const std::vector<std::string>& morphemes) const;
  std::vector<const Morpheme*> on_tape(std::size_t tape) const;

  TapeTuple lexical(const Stem& stem) const;
  std::vector<FeatureStructure> morpheme_features(const Stem& stem) const;

  /// Tape order used when printing a morpheme combination: that of the
  /// first stem line, or tape order if there are no stems.
  std::vector<std::size_t> display_order() const;
  std::string format_morphemes(const std::vector<std::string>& per_tape) const;

 private:
  std::size_t ntapes_ = 0;
  std::vector<Morpheme> morphemes_;
  std::vector<Stem> stems_;
  std::unordered_map<std::string, std::size_t> morpheme_index_;
  std::unordered_map<std::string, std::size_t> stem_index_;
};

/// Grammar file (.mtg). See README for the syntax.
Grammar parse_grammar(std::string_view text);
std::string serialize(const Grammar& grammar);

/// Lexicon file (.mtl), validated against the grammar's tapes and alphabet.
Lexicon parse_lexicon(std::string_view text, const Grammar& grammar);
std::string serialize(const Lexicon& lexicon, const Grammar& grammar);

/// A single expression in rule syntax, e.g. "C1 a C2 [v]".
Expr parse_expr(std::string_view text, const Alphabet& alphabet);

}  // namespace mtmorph
