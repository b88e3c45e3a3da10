#pragma once

#include <string>
#include <vector>

#include "mtmorph/expr.hpp"
#include "mtmorph/features.hpp"
#include "mtmorph/segment.hpp"

namespace mtmorph {

enum class Operator {
  Optional,    // LEX may surface as SURF
  Obligatory,  // LEX in context must surface as SURF
};

/// Lexical side is an n-tuple per position, surface side a single
/// expression per position.
struct Rule {
  std::string id;
  Operator op = Operator::Optional;
  ExprTuple llc, lex, rlc;
  Expr lsc, surf, rsc;
  FeatureStructure features;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Parallel lexical tapes, one segment string per tape.
using TapeTuple = std::vector<SegmentString>;

struct Step {
  std::vector<SegmentString> lex;  // slice consumed on each tape
  SegmentString surf;
  std::string rule;
  Bindings bindings;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Partition {
  std::vector<Step> steps;

  TapeTuple lexical(std::size_t ntapes) const;
  SegmentString surface() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Per-tape concatenation of the lexical slices equals `lexical`, and the
/// concatenated surface slices equal `surface`.
bool covers(const Partition& partition, const TapeTuple& lexical, const SegmentString& surface);

}  // namespace mtmorph
