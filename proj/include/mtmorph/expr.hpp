#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mtmorph/segment.hpp"

namespace mtmorph {

enum class VarClass { C, V };

struct VarRef {
  VarClass cls = VarClass::C;
  int index = 1;

  friend bool operator==(const VarRef&, const VarRef&) = default;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

std::string to_string(VarRef var);

inline bool accepts(VarClass cls, SegmentKind kind) noexcept {
  return cls == VarClass::C ? kind == SegmentKind::Consonant : kind == SegmentKind::Vowel;
}

/// Literal segment, class variable, or a bracketed optional group. Groups
/// hold only literals and variables.
struct Item {
  enum class Kind { Literal, Variable, Optional };
  Kind kind = Kind::Literal;
  Segment literal{};
  VarRef var{};
  std::vector<Item> group;

  static Item lit(Segment s) { return Item{Kind::Literal, s, {}, {}}; }
  static Item variable(VarClass cls, int index) { return Item{Kind::Variable, {}, {cls, index}, {}}; }
  static Item optional(std::vector<Item> items) { return Item{Kind::Optional, {}, {}, std::move(items)}; }

  friend bool operator==(const Item&, const Item&) = default;
};

/// A sequence of items, or the any-context '*'. An empty non-any
/// expression is the nil slot (written 0).
struct Expr {
  bool any = false;
  std::vector<Item> items;

  static Expr any_context() { return Expr{true, {}}; }
  static Expr epsilon() { return Expr{}; }
  static Expr of(std::vector<Item> items) { return Expr{false, std::move(items)}; }

  bool is_epsilon() const noexcept { return !any && items.empty(); }

  friend bool operator==(const Expr&, const Expr&) = default;
};

using ExprTuple = std::vector<Expr>;

/// Variable assignment for one rule application.
using Bindings = std::map<VarRef, Segment>;

/// DSL rendering: "C1 a C2 [v]", "0" for nil, "*" for any.
std::string to_text(const Expr& expr);
std::string to_text(const ExprTuple& tuple);

}  // namespace mtmorph
