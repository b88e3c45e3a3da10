#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtmorph/expr.hpp"
#include "mtmorph/features.hpp"
#include "mtmorph/grammar.hpp"
#include "mtmorph/rule.hpp"

namespace mtmorph {

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExprMatch {
  std::size_t length = 0;
  Bindings bindings;

  friend bool operator==(const ExprMatch&, const ExprMatch&) = default;
};

/// Every way `expr` matches a prefix of `input[at..]` under `bindings`,
/// deduplicated. An any-context yields the single match (0, bindings).
std::vector<ExprMatch> match_expr(const Expr& expr, std::span<const Segment> input, std::size_t at,
                                  const Bindings& bindings);

struct StepOption {
  std::vector<std::size_t> lex_consumed;
  std::size_t surf_consumed = 0;
  Bindings bindings;

  friend bool operator==(const StepOption&, const StepOption&) = default;
};

/// All ways `rule` licenses a pair starting at `positions` on the lexical
/// tapes and `surf_position` on a known surface. Options that consume no
/// lexical material are never returned.
std::vector<StepOption> license_step(const Rule& rule, const TapeTuple& lexical,
                                     std::span<const std::size_t> positions,
                                     std::span<const Segment> surface, std::size_t surf_position,
                                     const Bindings& bindings = {});

struct SynthesisResult {
  SegmentString surface;
  FeatureStructure features;
  Partition partition;
  /// Other partitions with the same surface and features; filled only
  /// when SynthesisOptions::keep_all_partitions is set.
  std::vector<Partition> alternatives;
};

struct SynthesisOptions {
  bool keep_all_partitions = false;
};

/// All surfaces licensed for `lexical`. `morpheme_features` is empty or
/// one structure per tape; `constraints` is unified into every analysis.
/// Results are sorted by surface, then features.
std::vector<SynthesisResult> synthesize(const TapeTuple& lexical,
                                        std::span<const FeatureStructure> morpheme_features,
                                        const Grammar& grammar,
                                        const FeatureStructure& constraints = {},
                                        SynthesisOptions options = {});

struct Violation {
  std::size_t step = 0;
  std::string rule;
  /// Set when another obligatory rule triggered on the same step and was
  /// satisfied there, i.e. two obligatory rules compete for the step.
  std::string competitor;

  bool is_conflict() const noexcept { return !competitor.empty(); }
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> check_obligatory(const Partition& partition, const Grammar& grammar,
                                        const FeatureStructure& analysis_features);

struct Analysis {
  std::vector<std::string> morphemes;  // morpheme id per tape
  std::string stem;                    // empty until morphotactics accepts it
  std::string gloss;
  FeatureStructure features;
  Partition partition;
};

/// Every morpheme combination (one per tape) whose synthesis yields
/// `surface`, with the features of that derivation. No stem filtering.
std::vector<Analysis> analyze(std::span<const Segment> surface, const Grammar& grammar,
                              const Lexicon& lexicon);

/// synthesize() applied to a declared stem, with the stem's own features
/// added to `constraints`. Throws std::invalid_argument for unknown stems.
std::vector<SynthesisResult> synthesize_stem(const Grammar& grammar, const Lexicon& lexicon,
                                             std::string_view stem_id,
                                             const FeatureStructure& constraints = {},
                                             SynthesisOptions options = {});

}  // namespace mtmorph
