#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mtmorph {

struct Value {
  enum class Kind { Atom, Variable };
  Kind kind = Kind::Atom;
  std::string text;

  static Value atom(std::string text) { return {Kind::Atom, std::move(text)}; }
  static Value variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  bool is_variable() const noexcept { return kind == Kind::Variable; }

  /// "pl" or "$N"
  std::string to_string() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;
};

/// Flat attribute-value map. Values are atoms or variables; attributes
/// keep their insertion order for display, but equality is order-blind.
class FeatureStructure {
 public:
  using Pair = std::pair<std::string, Value>;

  FeatureStructure() = default;
  FeatureStructure(std::initializer_list<Pair> pairs);

  /// Parses "number=pl, form=$F" (commas or whitespace between pairs).
  /// Throws std::invalid_argument on malformed input.
  static FeatureStructure parse(std::string_view text);

  const Value* find(std::string_view attribute) const;
  void set(std::string attribute, Value value);

  bool empty() const noexcept { return pairs_.empty(); }
  std::size_t size() const noexcept { return pairs_.size(); }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  /// Appends `suffix` to every variable name.
  FeatureStructure renamed(std::string_view suffix) const;

  /// Variables renamed to _1, _2, ... by first occurrence in attribute
  /// name order. Two structures that differ only by variable names have
  /// equal canonical forms.
  FeatureStructure canonical() const;

  /// Order- and renaming-independent identity, e.g. "form=dim;number=sing".
  std::string key() const;

  /// "number=sing form=dim", in insertion order.
  std::string to_string() const;

  /// True if every atom-valued pair of *this appears in `other`.
  bool subsumes(const FeatureStructure& other) const;

  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b);

 private:
  std::vector<Pair> pairs_;
};

/// Most general unifier; nullopt iff some attribute resolves to two
/// distinct atoms. Variables are shared by name across both arguments.
std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b);

inline bool equivalent(const FeatureStructure& a, const FeatureStructure& b) {
  return a.key() == b.key();
}

}  // namespace mtmorph
