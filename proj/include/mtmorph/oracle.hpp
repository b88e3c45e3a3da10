#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mtmorph/features.hpp"
#include "mtmorph/grammar.hpp"
#include "mtmorph/rule.hpp"

namespace mtmorph::oracle {

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t max_candidates = 20'000'000;
};

struct SurfaceForm {
  SegmentString surface;
  FeatureStructure features;  // canonical
};

/// Brute-force reference for synthesis: every segmentation of the lexical
/// tapes, every rule at every slice, every optional-group expansion and
/// every variable assignment, checked against the complete strings.
/// Sorted by surface, then feature key. Throws std::invalid_argument if
/// max_surface_len > 16 and LimitExceeded if the search visits more than
/// limits.max_candidates candidate steps.
std::vector<SurfaceForm> enumerate_surfaces(const TapeTuple& lexical, const Grammar& grammar,
                                            std::size_t max_surface_len,
                                            std::span<const FeatureStructure> morpheme_features = {},
                                            const FeatureStructure& constraints = {},
                                            Limits limits = {});

}  // namespace mtmorph::oracle
