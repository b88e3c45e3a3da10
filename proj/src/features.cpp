#include "mtmorph/features.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace mtmorph {

std::string Value::to_string() const { return is_variable() ? "$" + text : text; }

FeatureStructure::FeatureStructure(std::initializer_list<Pair> pairs) {
  for (const auto& p : pairs) set(p.first, p.second);
}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'' ||
         c == '.';
}

}  // namespace

FeatureStructure FeatureStructure::parse(std::string_view text) {
  FeatureStructure fs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  auto name = [&](const char* what) {
    std::size_t start = i;
    while (i < text.size() && is_name_char(text[i])) ++i;
    if (start == i) throw std::invalid_argument(std::string("expected ") + what);
    return std::string(text.substr(start, i - start));
  };
  skip();
  while (i < text.size()) {
    std::string attribute = name("attribute name");
    if (i >= text.size() || text[i] != '=') throw std::invalid_argument("expected '=' after " + attribute);
    ++i;
    bool variable = i < text.size() && text[i] == '$';
    if (variable) ++i;
    std::string value = name("value");
    if (fs.find(attribute)) throw std::invalid_argument("attribute " + attribute + " given twice");
    fs.set(attribute, variable ? Value::variable(value) : Value::atom(value));
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',')
      throw std::invalid_argument(std::string("unexpected '") + text[i] + "'");
    skip();
  }
  return fs;
}

const Value* FeatureStructure::find(std::string_view attribute) const {
  for (const auto& [a, v] : pairs_)
    if (a == attribute) return &v;
  return nullptr;
}

void FeatureStructure::set(std::string attribute, Value value) {
  for (auto& [a, v] : pairs_) {
    if (a == attribute) {
      v = std::move(value);
      return;
    }
  }
  pairs_.emplace_back(std::move(attribute), std::move(value));
}

FeatureStructure FeatureStructure::renamed(std::string_view suffix) const {
  FeatureStructure out = *this;
  for (auto& [a, v] : out.pairs_)
    if (v.is_variable()) v.text += suffix;
  return out;
}

FeatureStructure FeatureStructure::canonical() const {
  std::vector<const Pair*> sorted;
  for (const auto& p : pairs_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->first < b->first; });
  std::map<std::string, std::string> names;
  for (const auto* p : sorted)
    if (p->second.is_variable() && !names.count(p->second.text))
      names.emplace(p->second.text, "_" + std::to_string(names.size() + 1));
  FeatureStructure out = *this;
  for (auto& [a, v] : out.pairs_)
    if (v.is_variable()) v.text = names.at(v.text);
  return out;
}

std::string FeatureStructure::key() const {
  FeatureStructure c = canonical();
  std::vector<const Pair*> sorted;
  for (const auto& p : c.pairs_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->first < b->first; });
  std::string out;
  for (const auto* p : sorted) {
    if (!out.empty()) out += ';';
    out += p->first + "=" + p->second.to_string();
  }
  return out;
}

std::string FeatureStructure::to_string() const {
  std::string out;
  for (const auto& [a, v] : pairs_) {
    if (!out.empty()) out += ' ';
    out += a + "=" + v.to_string();
  }
  return out;
}

bool FeatureStructure::subsumes(const FeatureStructure& other) const {
  for (const auto& [a, v] : pairs_) {
    if (v.is_variable()) continue;
    const Value* w = other.find(a);
    if (!w || *w != v) return false;
  }
  return true;
}

bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [attr, v] : a.pairs_) {
    const Value* w = b.find(attr);
    if (!w || *w != v) return false;
  }
  return true;
}

namespace {

// Union-find over variable names; a class is either free or bound to an atom.
class Substitution {
 public:
  Value resolve(const Value& v) const {
    Value cur = v;
    while (cur.is_variable()) {
      auto it = links_.find(cur.text);
      if (it == links_.end()) break;
      cur = it->second;
    }
    return cur;
  }

  bool unify(const Value& x, const Value& y) {
    Value a = resolve(x), b = resolve(y);
    if (a == b) return true;
    if (!a.is_variable() && !b.is_variable()) return false;
    if (a.is_variable() && b.is_variable()) {
      // Smaller name represents the class so the result is deterministic.
      if (b.text < a.text) std::swap(a, b);
      links_[b.text] = a;
      return true;
    }
    if (a.is_variable()) links_[a.text] = b;
    else links_[b.text] = a;
    return true;
  }

 private:
  std::map<std::string, Value> links_;
};

}  // namespace

std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
  Substitution subst;
  std::vector<FeatureStructure::Pair> merged;
  auto absorb = [&](const FeatureStructure& fs) {
    for (const auto& [attr, v] : fs) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](auto& p) { return p.first == attr; });
      if (it == merged.end()) merged.emplace_back(attr, v);
      else if (!subst.unify(it->second, v)) return false;
    }
    return true;
  };
  if (!absorb(a) || !absorb(b)) return std::nullopt;
  FeatureStructure out;
  for (auto& [attr, v] : merged) out.set(attr, subst.resolve(v));
  return out;
}

}  // namespace mtmorph
