#include "mtmorph/oracle.hpp"

#include <map>
#include <string>

// Deliberately independent of the engine: no shared matcher, no search
// ordering tricks. Every optional group is expanded up front into flat
// item lists, and a flat list is compared position by position.

namespace mtmorph::oracle {

namespace {

using Flat = std::vector<Item>;

std::vector<Flat> expansions(const Expr& expr) {
  std::vector<Flat> out{{}};
  for (const Item& item : expr.items) {
    if (item.kind != Item::Kind::Optional) {
      for (auto& f : out) f.push_back(item);
      continue;
    }
    std::vector<Flat> next;
    for (const auto& f : out) {
      next.push_back(f);
      Flat with = f;
      with.insert(with.end(), item.group.begin(), item.group.end());
      next.push_back(std::move(with));
    }
    out = std::move(next);
  }
  return out;
}

bool match_flat(const Flat& flat, const SegmentString& input, std::size_t begin, Bindings& b) {
  if (begin + flat.size() > input.size()) return false;
  for (std::size_t k = 0; k < flat.size(); ++k) {
    const Segment& s = input[begin + k];
    const Item& item = flat[k];
    if (item.kind == Item::Kind::Literal) {
      if (!(s == item.literal)) return false;
      continue;
    }
    if (!accepts(item.var.cls, s.kind)) return false;
    auto it = b.find(item.var);
    if (it == b.end()) b.emplace(item.var, s);
    else if (!(it->second == s)) return false;
  }
  return true;
}

std::vector<Bindings> exact(const Expr& expr, const SegmentString& slice, const Bindings& b) {
  std::vector<Bindings> out;
  for (const auto& f : expansions(expr)) {
    Bindings nb = b;
    if (f.size() == slice.size() && match_flat(f, slice, 0, nb)) out.push_back(std::move(nb));
  }
  return out;
}

std::vector<Bindings> ending_at(const Expr& expr, const SegmentString& input, std::size_t end, const Bindings& b) {
  if (expr.any) return {b};
  std::vector<Bindings> out;
  for (const auto& f : expansions(expr)) {
    Bindings nb = b;
    if (f.size() <= end && match_flat(f, input, end - f.size(), nb)) out.push_back(std::move(nb));
  }
  return out;
}

std::vector<Bindings> starting_at(const Expr& expr, const SegmentString& input, std::size_t begin, const Bindings& b) {
  if (expr.any) return {b};
  std::vector<Bindings> out;
  for (const auto& f : expansions(expr)) {
    Bindings nb = b;
    if (match_flat(f, input, begin, nb)) out.push_back(std::move(nb));
  }
  return out;
}

SegmentString slice_of(const SegmentString& s, std::size_t begin, std::size_t length) {
  return SegmentString(s.begin() + static_cast<std::ptrdiff_t>(begin),
                       s.begin() + static_cast<std::ptrdiff_t>(begin + length));
}

/// Bindings for LEX (exact slices) and both lexical contexts at `begin`.
std::vector<Bindings> lexical_bindings(const Rule& rule, const TapeTuple& tapes,
                                       const std::vector<std::size_t>& begin,
                                       const std::vector<std::size_t>& length) {
  std::vector<Bindings> frontier{{}};
  for (std::size_t t = 0; t < tapes.size(); ++t) {
    std::vector<Bindings> next;
    SegmentString slice = slice_of(tapes[t], begin[t], length[t]);
    for (const auto& b : frontier)
      for (const auto& lb : exact(rule.lex[t], slice, b))
        for (const auto& cb : ending_at(rule.llc[t], tapes[t], begin[t], lb))
          for (auto& rb : starting_at(rule.rlc[t], tapes[t], begin[t] + length[t], cb))
            next.push_back(std::move(rb));
    frontier = std::move(next);
  }
  return frontier;
}

void instantiate(const Flat& flat, std::size_t k, const Alphabet& alphabet, SegmentString& cur, Bindings& b,
                 std::vector<std::pair<SegmentString, Bindings>>& out) {
  if (k == flat.size()) {
    out.emplace_back(cur, b);
    return;
  }
  const Item& item = flat[k];
  if (item.kind == Item::Kind::Literal) {
    cur.push_back(item.literal);
    instantiate(flat, k + 1, alphabet, cur, b, out);
    cur.pop_back();
    return;
  }
  if (auto it = b.find(item.var); it != b.end()) {
    cur.push_back(it->second);
    instantiate(flat, k + 1, alphabet, cur, b, out);
    cur.pop_back();
    return;
  }
  for (const Segment& s : item.var.cls == VarClass::C ? alphabet.consonants() : alphabet.vowels()) {
    b.emplace(item.var, s);
    cur.push_back(s);
    instantiate(flat, k + 1, alphabet, cur, b, out);
    cur.pop_back();
    b.erase(item.var);
  }
}

struct Chosen {
  const Rule* rule;
  std::vector<std::size_t> begin, length;
  SegmentString surf;
  Bindings bindings;
};

class Enumerator {
 public:
  Enumerator(const TapeTuple& lexical, const Grammar& grammar, std::size_t max_len,
             std::span<const FeatureStructure> morpheme_features, const FeatureStructure& constraints,
             Limits limits)
      : lexical_(lexical), grammar_(grammar), max_len_(max_len), morpheme_features_(morpheme_features),
        constraints_(constraints), limits_(limits) {}

  std::vector<SurfaceForm> run() {
    std::vector<std::size_t> pos(lexical_.size(), 0);
    recurse(pos, 0);
    std::vector<SurfaceForm> out;
    for (auto& [key, form] : found_) out.push_back(std::move(form));
    return out;
  }

 private:
  void recurse(std::vector<std::size_t>& pos, std::size_t surf_len) {
    bool done = true;
    for (std::size_t t = 0; t < lexical_.size(); ++t) done = done && pos[t] == lexical_[t].size();
    if (done) {
      finalize();
      return;
    }
    // Odometer over every slice-length vector that fits.
    std::vector<std::size_t> len(lexical_.size(), 0);
    while (true) {
      std::size_t t = 0;
      while (t < len.size() && ++len[t] > lexical_[t].size() - pos[t]) len[t++] = 0;
      if (t == len.size()) break;
      for (const Rule& rule : grammar_.rules) {
        for (const auto& theta : lexical_bindings(rule, lexical_, pos, len)) {
          for (const auto& flat : expansions(rule.surf)) {
            std::vector<std::pair<SegmentString, Bindings>> surfaces;
            SegmentString cur;
            Bindings b = theta;
            instantiate(flat, 0, grammar_.alphabet, cur, b, surfaces);
            for (auto& [surf, bindings] : surfaces) {
              if (surf_len + surf.size() > max_len_) continue;
              if (++candidates_ > limits_.max_candidates)
                throw LimitExceeded("oracle candidate bound exceeded");
              std::size_t n = surf.size();
              chosen_.push_back({&rule, pos, len, std::move(surf), std::move(bindings)});
              for (std::size_t k = 0; k < pos.size(); ++k) pos[k] += len[k];
              recurse(pos, surf_len + n);
              for (std::size_t k = 0; k < pos.size(); ++k) pos[k] -= len[k];
              chosen_.pop_back();
            }
          }
        }
      }
    }
  }

  void finalize() {
    SegmentString surface;
    std::vector<std::size_t> surf_begin;
    for (const auto& c : chosen_) {
      surf_begin.push_back(surface.size());
      surface.insert(surface.end(), c.surf.begin(), c.surf.end());
    }
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      const auto& c = chosen_[i];
      bool ok = false;
      for (const auto& lb : ending_at(c.rule->lsc, surface, surf_begin[i], c.bindings))
        if (!starting_at(c.rule->rsc, surface, surf_begin[i] + c.surf.size(), lb).empty()) ok = true;
      if (!ok) return;
    }

    std::optional<FeatureStructure> fs = constraints_.renamed("~x");
    for (std::size_t t = 0; fs && t < morpheme_features_.size(); ++t)
      if (!lexical_[t].empty()) fs = unify(*fs, morpheme_features_[t].renamed("~m" + std::to_string(t)));
    for (std::size_t i = 0; fs && i < chosen_.size(); ++i)
      fs = unify(*fs, chosen_[i].rule->features.renamed("~s" + std::to_string(i)));
    if (!fs) return;

    for (const auto& c : chosen_)
      if (violates_obligatory(c, *fs)) return;

    FeatureStructure canon = fs->canonical();
    std::string key = to_text(surface) + '\t' + canon.key();
    found_.try_emplace(key, SurfaceForm{surface, std::move(canon)});
  }

  bool violates_obligatory(const Chosen& step, const FeatureStructure& fs) const {
    for (const Rule& rule : grammar_.rules) {
      if (rule.op != Operator::Obligatory) continue;
      if (!unify(fs, rule.features.renamed("~ob"))) continue;
      for (const auto& theta : lexical_bindings(rule, lexical_, step.begin, step.length)) {
        bool realizable = false;
        for (const auto& flat : expansions(rule.surf)) {
          Bindings b = theta;
          if (flat.size() == step.surf.size() && match_flat(flat, step.surf, 0, b)) realizable = true;
        }
        if (!realizable) return true;
      }
    }
    return false;
  }

  const TapeTuple& lexical_;
  const Grammar& grammar_;
  std::size_t max_len_;
  std::span<const FeatureStructure> morpheme_features_;
  const FeatureStructure& constraints_;
  Limits limits_;
  std::vector<Chosen> chosen_;
  std::size_t candidates_ = 0;
  std::map<std::string, SurfaceForm> found_;
};

}  // namespace

std::vector<SurfaceForm> enumerate_surfaces(const TapeTuple& lexical, const Grammar& grammar,
                                            std::size_t max_surface_len,
                                            std::span<const FeatureStructure> morpheme_features,
                                            const FeatureStructure& constraints, Limits limits) {
  if (max_surface_len > 16) throw std::invalid_argument("max_surface_len must be at most 16");
  if (lexical.size() != grammar.ntapes()) throw std::invalid_argument("lexical arity differs from grammar");
  if (!morpheme_features.empty() && morpheme_features.size() != lexical.size())
    throw std::invalid_argument("expected one morpheme feature structure per tape");
  return Enumerator(lexical, grammar, max_surface_len, morpheme_features, constraints, limits).run();
}

}  // namespace mtmorph::oracle
