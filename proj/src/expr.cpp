#include "mtmorph/expr.hpp"

#include "mtmorph/rule.hpp"

namespace mtmorph {

std::string to_string(VarRef var) {
  return (var.cls == VarClass::C ? "C" : "V") + std::to_string(var.index);
}

namespace {

void append_item(std::string& out, const Item& item) {
  if (!out.empty() && out.back() != '[') out += ' ';
  switch (item.kind) {
    case Item::Kind::Literal: out += item.literal.symbol; break;
    case Item::Kind::Variable: out += to_string(item.var); break;
    case Item::Kind::Optional:
      out += '[';
      for (const auto& inner : item.group) append_item(out, inner);
      out += ']';
      break;
  }
}

}  // namespace

std::string to_text(const Expr& expr) {
  if (expr.any) return "*";
  if (expr.items.empty()) return "0";
  std::string out;
  for (const auto& item : expr.items) append_item(out, item);
  return out;
}

std::string to_text(const ExprTuple& tuple) {
  bool all_any = !tuple.empty();
  for (const auto& e : tuple) all_any = all_any && e.any;
  if (all_any) return "*";
  if (tuple.size() == 1) return to_text(tuple.front());
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    out += to_text(tuple[i]);
  }
  return out + ")";
}

TapeTuple Partition::lexical(std::size_t ntapes) const {
  TapeTuple tapes(ntapes);
  for (const auto& step : steps)
    for (std::size_t t = 0; t < ntapes && t < step.lex.size(); ++t)
      tapes[t].insert(tapes[t].end(), step.lex[t].begin(), step.lex[t].end());
  return tapes;
}

SegmentString Partition::surface() const {
  SegmentString out;
  for (const auto& step : steps) out.insert(out.end(), step.surf.begin(), step.surf.end());
  return out;
}

bool covers(const Partition& partition, const TapeTuple& lexical, const SegmentString& surface) {
  for (const auto& step : partition.steps)
    if (step.lex.size() != lexical.size()) return false;
  return partition.lexical(lexical.size()) == lexical && partition.surface() == surface;
}

}  // namespace mtmorph
