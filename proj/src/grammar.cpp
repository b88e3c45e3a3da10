#include "mtmorph/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mtmorph {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

std::optional<std::size_t> Grammar::tape_index(std::string_view name) const {
  for (std::size_t i = 0; i < tape_names.size(); ++i)
    if (tape_names[i] == name) return i;
  return std::nullopt;
}

const Rule* Grammar::find_rule(std::string_view id) const {
  for (const auto& r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

void Lexicon::add_morpheme(Morpheme morpheme) {
  if (morpheme.tape >= ntapes_) throw std::invalid_argument("morpheme " + morpheme.id + ": bad tape");
  if (morpheme_index_.count(morpheme.id))
    throw std::invalid_argument("duplicate morpheme id " + morpheme.id);
  morpheme_index_.emplace(morpheme.id, morphemes_.size());
  morphemes_.push_back(std::move(morpheme));
}

void Lexicon::add_stem(Stem stem) {
  if (stem_index_.count(stem.id)) throw std::invalid_argument("duplicate stem id " + stem.id);
  if (stem.morphemes.size() != ntapes_)
    throw std::invalid_argument("stem " + stem.id + " must name one morpheme per tape");
  for (std::size_t t = 0; t < ntapes_; ++t) {
    const Morpheme* m = find_morpheme(stem.morphemes[t]);
    if (!m) throw std::invalid_argument("stem " + stem.id + ": no morpheme " + stem.morphemes[t]);
    if (m->tape != t) throw std::invalid_argument("stem " + stem.id + ": morpheme on wrong tape");
  }
  if (stem.listed.empty())
    for (std::size_t t = 0; t < ntapes_; ++t) stem.listed.push_back(t);
  stem_index_.emplace(stem.id, stems_.size());
  stems_.push_back(std::move(stem));
}

const Morpheme* Lexicon::find_morpheme(std::string_view id) const {
  auto it = morpheme_index_.find(std::string(id));
  return it == morpheme_index_.end() ? nullptr : &morphemes_[it->second];
}

const Stem* Lexicon::find_stem(std::string_view id) const {
  auto it = stem_index_.find(std::string(id));
  return it == stem_index_.end() ? nullptr : &stems_[it->second];
}

const Stem* Lexicon::find_stem_by_morphemes(const std::vector<std::string>& morphemes) const {
  for (const auto& s : stems_)
    if (s.morphemes == morphemes) return &s;
  return nullptr;
}

std::vector<const Morpheme*> Lexicon::on_tape(std::size_t tape) const {
  std::vector<const Morpheme*> out;
  for (const auto& m : morphemes_)
    if (m.tape == tape) out.push_back(&m);
  return out;
}

TapeTuple Lexicon::lexical(const Stem& stem) const {
  TapeTuple tapes;
  for (const auto& id : stem.morphemes) tapes.push_back(find_morpheme(id)->form);
  return tapes;
}

std::vector<FeatureStructure> Lexicon::morpheme_features(const Stem& stem) const {
  std::vector<FeatureStructure> out;
  for (const auto& id : stem.morphemes) out.push_back(find_morpheme(id)->features);
  return out;
}

std::vector<std::size_t> Lexicon::display_order() const {
  if (!stems_.empty()) return stems_.front().listed;
  std::vector<std::size_t> order(ntapes_);
  for (std::size_t t = 0; t < ntapes_; ++t) order[t] = t;
  return order;
}

std::string Lexicon::format_morphemes(const std::vector<std::string>& per_tape) const {
  std::string out;
  for (std::size_t t : display_order()) {
    if (t >= per_tape.size()) continue;
    if (!out.empty()) out += '+';
    out += per_tape[t];
  }
  return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    lines.push_back({number, std::move(line)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& text, std::size_t from = 0) {
  std::vector<Token> tokens;
  std::size_t i = from;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (start < i) tokens.push_back({text.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::pair<std::size_t, std::size_t> trimmed(const std::string& s, std::size_t begin, std::size_t end) {
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return {begin, end};
}

/// Splits "keyword: rest" and returns the position after the colon, or
/// npos if the line does not start with that keyword.
std::size_t after_keyword(const std::string& line, std::string_view keyword) {
  auto [b, e] = trimmed(line, 0, line.size());
  if (line.compare(b, keyword.size(), keyword) != 0) return std::string::npos;
  std::size_t i = b + keyword.size();
  while (i < e && is_space(line[i])) ++i;
  if (i >= e || line[i] != ':') return std::string::npos;
  return i + 1;
}

class ExprParser {
 public:
  ExprParser(const Alphabet& alphabet, std::size_t line) : alphabet_(alphabet), line_(line) {}

  /// Parses s[begin, end). `context` permits the any-context '*'.
  Expr parse(const std::string& s, std::size_t begin, std::size_t end, bool context) const {
    auto [b, e] = trimmed(s, begin, end);
    if (b == e) fail(ParseErrorKind::Syntax, begin, "empty expression (write 0 for a nil slot)");
    if (e - b == 1 && s[b] == '*') {
      if (!context)
        fail(ParseErrorKind::MisplacedAnyContext, b, "'*' is only allowed as a whole context");
      return Expr::any_context();
    }
    if (e - b == 1 && s[b] == '0') return Expr::epsilon();

    Expr expr;
    std::vector<Item>* target = &expr.items;
    std::size_t group_start = 0;
    std::size_t i = b;
    while (i < e) {
      char c = s[i];
      if (is_space(c)) {
        ++i;
        continue;
      }
      if (c == '[') {
        if (target != &expr.items) fail(ParseErrorKind::Syntax, i, "optional groups cannot nest");
        expr.items.push_back(Item::optional({}));
        target = &expr.items.back().group;
        group_start = i;
        ++i;
      } else if (c == ']') {
        if (target == &expr.items) fail(ParseErrorKind::Syntax, i, "unmatched ']'");
        if (target->empty()) fail(ParseErrorKind::Syntax, i, "empty optional group");
        target = &expr.items;
        ++i;
      } else if (c == 'C' || c == 'V') {
        std::size_t j = i + 1;
        while (j < e && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) fail(ParseErrorKind::Syntax, i, std::string("variable ") + c + " needs an index");
        int index = std::stoi(s.substr(i + 1, j - i - 1));
        if (index < 1) fail(ParseErrorKind::Syntax, i, "variable index must be at least 1");
        target->push_back(Item::variable(c == 'C' ? VarClass::C : VarClass::V, index));
        i = j;
      } else if (c == '*') {
        fail(ParseErrorKind::MisplacedAnyContext, i, "'*' cannot appear inside an expression");
      } else if (c == '0') {
        fail(ParseErrorKind::Syntax, i, "0 (nil) must stand alone");
      } else if (auto kind = alphabet_.try_classify(c)) {
        target->push_back(Item::lit(Segment{c, *kind}));
        ++i;
      } else if (Alphabet::is_reserved(c)) {
        fail(ParseErrorKind::Syntax, i, std::string("unexpected '") + c + "'");
      } else {
        fail(ParseErrorKind::UnknownSymbol, i, std::string("unknown symbol '") + c + "'");
      }
    }
    if (target != &expr.items) fail(ParseErrorKind::Syntax, group_start, "unclosed '['");
    return expr;
  }

  [[noreturn]] void fail(ParseErrorKind kind, std::size_t index, const std::string& msg) const {
    throw ParseError(kind, line_, index + 1, msg);
  }

 private:
  const Alphabet& alphabet_;
  std::size_t line_;
};

ExprTuple parse_tuple(const ExprParser& parser, const std::string& s, std::size_t begin,
                      std::size_t end, std::size_t ntapes, bool context) {
  auto [b, e] = trimmed(s, begin, end);
  if (b == e) parser.fail(ParseErrorKind::Syntax, begin, "empty field");
  if (s[b] != '(') {
    if (context && e - b == 1 && s[b] == '*') return ExprTuple(ntapes, Expr::any_context());
    if (ntapes != 1)
      parser.fail(ParseErrorKind::ArityMismatch, b,
                  "expected a " + std::to_string(ntapes) + "-tuple, found a single expression");
    return {parser.parse(s, b, e, context)};
  }
  if (s[e - 1] != ')') parser.fail(ParseErrorKind::Syntax, e - 1, "expected ')'");
  ExprTuple tuple;
  std::size_t start = b + 1;
  for (std::size_t i = b + 1; i < e; ++i) {
    if (s[i] == ',' || i == e - 1) {
      tuple.push_back(parser.parse(s, start, i, context));
      start = i + 1;
    }
  }
  if (tuple.size() != ntapes)
    parser.fail(ParseErrorKind::ArityMismatch, b,
                "tuple has " + std::to_string(tuple.size()) + " components, grammar has " +
                    std::to_string(ntapes) + " tapes");
  return tuple;
}

FeatureStructure parse_features(const std::string& s, std::size_t from, std::size_t line) {
  try {
    return FeatureStructure::parse(std::string_view(s).substr(from));
  } catch (const std::invalid_argument& e) {
    throw ParseError(ParseErrorKind::Syntax, line, from + 1, e.what());
  }
}

struct RuleBlock {
  Rule rule;
  std::size_t line = 0;
  bool has_lex = false;
  bool has_surf = false;
};

void finish_rule(RuleBlock& block, Grammar& grammar) {
  if (!block.has_lex || !block.has_surf)
    throw ParseError(ParseErrorKind::Syntax, block.line, 1,
                     "rule " + block.rule.id + " needs both lex: and surf: lines");
  bool consumes = std::any_of(block.rule.lex.begin(), block.rule.lex.end(),
                              [](const Expr& e) { return !e.items.empty(); });
  if (!consumes)
    throw ParseError(ParseErrorKind::Syntax, block.line, 1,
                     "rule " + block.rule.id + ": lexical form must contain at least one item");
  grammar.rules.push_back(std::move(block.rule));
}

}  // namespace

Expr parse_expr(std::string_view text, const Alphabet& alphabet) {
  std::string s(text);
  return ExprParser(alphabet, 1).parse(s, 0, s.size(), true);
}

Grammar parse_grammar(std::string_view text) {
  Grammar grammar;
  std::optional<std::string> consonants, vowels;
  bool have_tapes = false;
  bool alphabet_fixed = false;
  std::optional<RuleBlock> block;
  std::set<std::string> ids;

  auto fix_alphabet = [&](std::size_t line) {
    if (alphabet_fixed) return;
    if (!have_tapes) throw ParseError(ParseErrorKind::Syntax, line, 1, "'tapes:' must come first");
    if (consonants || vowels) {
      try {
        grammar.alphabet = Alphabet::from_sets(consonants.value_or(""), vowels.value_or(""));
      } catch (const std::invalid_argument& e) {
        throw ParseError(ParseErrorKind::Syntax, line, 1, e.what());
      }
    }
    alphabet_fixed = true;
  };

  for (const Line& ln : split_lines(text)) {
    const std::string& s = ln.text;
    auto tokens = tokenize(s);
    if (tokens.empty()) continue;

    if (std::size_t at = after_keyword(s, "tapes"); at != std::string::npos) {
      if (have_tapes) throw ParseError(ParseErrorKind::Syntax, ln.number, 1, "'tapes:' given twice");
      auto names = tokenize(s, at);
      if (names.empty()) throw ParseError(ParseErrorKind::Syntax, ln.number, at + 1, "no tapes");
      bool numeric = names.size() == 1 &&
                     std::all_of(names[0].text.begin(), names[0].text.end(),
                                 [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (numeric) {
        int n = std::stoi(names[0].text);
        if (n < 1) throw ParseError(ParseErrorKind::Syntax, ln.number, names[0].column, "need at least one tape");
        for (int i = 1; i <= n; ++i) grammar.tape_names.push_back("tape" + std::to_string(i));
      } else {
        for (const auto& t : names) {
          if (grammar.tape_index(t.text))
            throw ParseError(ParseErrorKind::DuplicateId, ln.number, t.column, "tape " + t.text + " declared twice");
          grammar.tape_names.push_back(t.text);
        }
      }
      have_tapes = true;
      continue;
    }
    if (std::size_t at = after_keyword(s, "consonants"); at != std::string::npos) {
      if (alphabet_fixed) throw ParseError(ParseErrorKind::Syntax, ln.number, 1, "alphabet must precede rules");
      consonants = s.substr(at);
      continue;
    }
    if (std::size_t at = after_keyword(s, "vowels"); at != std::string::npos) {
      if (alphabet_fixed) throw ParseError(ParseErrorKind::Syntax, ln.number, 1, "alphabet must precede rules");
      vowels = s.substr(at);
      continue;
    }
    if (tokens[0].text == "rule") {
      fix_alphabet(ln.number);
      if (block) finish_rule(*block, grammar);
      if (tokens.size() != 3)
        throw ParseError(ParseErrorKind::Syntax, ln.number, tokens[0].column, "expected 'rule <id> <opt|oblig>'");
      RuleBlock next;
      next.line = ln.number;
      next.rule.id = tokens[1].text;
      if (!ids.insert(next.rule.id).second)
        throw ParseError(ParseErrorKind::DuplicateId, ln.number, tokens[1].column, "duplicate rule id " + next.rule.id);
      if (tokens[2].text == "opt") next.rule.op = Operator::Optional;
      else if (tokens[2].text == "oblig") next.rule.op = Operator::Obligatory;
      else throw ParseError(ParseErrorKind::Syntax, ln.number, tokens[2].column, "operator must be opt or oblig");
      block = std::move(next);
      continue;
    }
    if (!block) throw ParseError(ParseErrorKind::Syntax, ln.number, tokens[0].column, "unexpected '" + tokens[0].text + "'");

    ExprParser parser(grammar.alphabet, ln.number);
    if (std::size_t at = after_keyword(s, "features"); at != std::string::npos) {
      block->rule.features = parse_features(s, at, ln.number);
      continue;
    }
    bool lexical = false;
    std::size_t at = after_keyword(s, "lex");
    if (at != std::string::npos) lexical = true;
    else at = after_keyword(s, "surf");
    if (at == std::string::npos)
      throw ParseError(ParseErrorKind::Syntax, ln.number, tokens[0].column, "unexpected '" + tokens[0].text + "'");
    if ((lexical && block->has_lex) || (!lexical && block->has_surf))
      throw ParseError(ParseErrorKind::Syntax, ln.number, tokens[0].column, "side given twice");

    std::vector<std::size_t> bars;
    for (std::size_t i = at; i < s.size(); ++i)
      if (s[i] == '|') bars.push_back(i);
    if (bars.size() != 2)
      throw ParseError(ParseErrorKind::Syntax, ln.number, at + 1, "expected three fields separated by '|'");
    std::size_t bounds[4] = {at, bars[0] + 1, bars[1] + 1, s.size() + 1};
    auto field = [&](int k) { return std::pair{bounds[k], bounds[k + 1] - 1}; };

    Rule& r = block->rule;
    if (lexical) {
      std::size_t n = grammar.ntapes();
      r.llc = parse_tuple(parser, s, field(0).first, field(0).second, n, true);
      r.lex = parse_tuple(parser, s, field(1).first, field(1).second, n, false);
      r.rlc = parse_tuple(parser, s, field(2).first, field(2).second, n, true);
      block->has_lex = true;
    } else {
      r.lsc = parser.parse(s, field(0).first, field(0).second, true);
      r.surf = parser.parse(s, field(1).first, field(1).second, false);
      r.rsc = parser.parse(s, field(2).first, field(2).second, true);
      block->has_surf = true;
    }
  }
  if (block) finish_rule(*block, grammar);
  if (!have_tapes) throw ParseError(ParseErrorKind::Syntax, 1, 1, "missing 'tapes:' declaration");
  fix_alphabet(1);
  return grammar;
}

std::string serialize(const Grammar& grammar) {
  std::string out = "tapes:";
  for (const auto& t : grammar.tape_names) out += " " + t;
  out += "\nconsonants:";
  for (const auto& s : grammar.alphabet.consonants()) out += std::string(" ") + s.symbol;
  out += "\nvowels:";
  for (const auto& s : grammar.alphabet.vowels()) out += std::string(" ") + s.symbol;
  out += "\n";
  for (const auto& r : grammar.rules) {
    out += "\nrule " + r.id + (r.op == Operator::Obligatory ? " oblig\n" : " opt\n");
    if (!r.features.empty()) {
      out += "  features:";
      bool first = true;
      for (const auto& [a, v] : r.features) {
        out += (first ? " " : ", ") + a + "=" + v.to_string();
        first = false;
      }
      out += "\n";
    }
    out += "  lex:  " + to_text(r.llc) + " | " + to_text(r.lex) + " | " + to_text(r.rlc) + "\n";
    out += "  surf: " + to_text(r.lsc) + " | " + to_text(r.surf) + " | " + to_text(r.rsc) + "\n";
  }
  return out;
}

namespace {

struct PendingStem {
  std::size_t line;
  std::vector<Token> tokens;
};

}  // namespace

Lexicon parse_lexicon(std::string_view text, const Grammar& grammar) {
  Lexicon lexicon(grammar.ntapes());
  std::vector<PendingStem> stems;

  for (const Line& ln : split_lines(text)) {
    auto tokens = tokenize(ln.text);
    if (tokens.empty()) continue;
    auto fail = [&](ParseErrorKind kind, const Token& t, const std::string& msg) {
      throw ParseError(kind, ln.number, t.column, msg);
    };

    if (tokens[0].text == "stem") {
      if (tokens.size() < 2) fail(ParseErrorKind::Syntax, tokens[0], "expected 'stem <id> <morpheme>...'");
      stems.push_back({ln.number, std::move(tokens)});
      continue;
    }
    if (tokens[0].text != "morpheme")
      fail(ParseErrorKind::Syntax, tokens[0], "expected 'morpheme' or 'stem', found '" + tokens[0].text + "'");
    if (tokens.size() < 4) fail(ParseErrorKind::Syntax, tokens[0], "expected 'morpheme <tape> <id> <form>'");

    Morpheme m;
    auto tape = grammar.tape_index(tokens[1].text);
    if (!tape) fail(ParseErrorKind::DanglingReference, tokens[1], "unknown tape " + tokens[1].text);
    m.tape = *tape;
    m.id = tokens[2].text;
    if (m.id.find('=') != std::string::npos) fail(ParseErrorKind::Syntax, tokens[2], "bad morpheme id");
    if (lexicon.find_morpheme(m.id)) fail(ParseErrorKind::DuplicateId, tokens[2], "duplicate morpheme id " + m.id);
    const Token& form = tokens[3];
    if (form.text != "0") {
      for (std::size_t i = 0; i < form.text.size(); ++i) {
        char c = form.text[i];
        auto kind = grammar.alphabet.try_classify(c);
        if (!kind) {
          auto kindOfError = Alphabet::is_reserved(c) ? ParseErrorKind::Syntax : ParseErrorKind::UnknownSymbol;
          throw ParseError(kindOfError, ln.number, form.column + i, std::string("unknown symbol '") + c + "'");
        }
        m.form.push_back(Segment{c, *kind});
      }
    }
    for (std::size_t k = 4; k < tokens.size(); ++k) {
      try {
        auto fs = FeatureStructure::parse(tokens[k].text);
        for (const auto& [a, v] : fs) {
          if (m.features.find(a)) fail(ParseErrorKind::Syntax, tokens[k], "attribute " + a + " given twice");
          m.features.set(a, v);
        }
      } catch (const std::invalid_argument& e) {
        fail(ParseErrorKind::Syntax, tokens[k], e.what());
      }
    }
    lexicon.add_morpheme(std::move(m));
  }

  for (const auto& pending : stems) {
    const auto& tokens = pending.tokens;
    auto fail = [&](ParseErrorKind kind, const Token& t, const std::string& msg) {
      throw ParseError(kind, pending.line, t.column, msg);
    };
    Stem stem;
    stem.id = tokens[1].text;
    if (lexicon.find_stem(stem.id)) fail(ParseErrorKind::DuplicateId, tokens[1], "duplicate stem id " + stem.id);
    stem.morphemes.assign(grammar.ntapes(), std::string());
    std::size_t listed = 0;
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      const Token& t = tokens[k];
      if (t.text.find('=') != std::string::npos) {
        try {
          auto fs = FeatureStructure::parse(t.text);
          for (const auto& [a, v] : fs) {
            if (a == "gloss" && !v.is_variable()) stem.gloss = v.text;
            else stem.features.set(a, v);
          }
        } catch (const std::invalid_argument& e) {
          fail(ParseErrorKind::Syntax, t, e.what());
        }
        continue;
      }
      const Morpheme* m = lexicon.find_morpheme(t.text);
      if (!m) fail(ParseErrorKind::DanglingReference, t, "stem " + stem.id + " references unknown morpheme " + t.text);
      if (!stem.morphemes[m->tape].empty())
        fail(ParseErrorKind::ArityMismatch, t, "stem " + stem.id + " names two morphemes on tape " + grammar.tape_names[m->tape]);
      stem.morphemes[m->tape] = m->id;
      stem.listed.push_back(m->tape);
      ++listed;
    }
    if (listed != grammar.ntapes())
      fail(ParseErrorKind::ArityMismatch, tokens[0],
           "stem " + stem.id + " must name " + std::to_string(grammar.ntapes()) + " morphemes, one per tape");
    lexicon.add_stem(std::move(stem));
  }
  return lexicon;
}

std::string serialize(const Lexicon& lexicon, const Grammar& grammar) {
  std::string out;
  auto features = [](const FeatureStructure& fs) {
    std::string s;
    for (const auto& [a, v] : fs) s += " " + a + "=" + v.to_string();
    return s;
  };
  for (const auto& m : lexicon.morphemes()) {
    std::string form = m.form.empty() ? "0" : to_text(m.form);
    out += "morpheme " + grammar.tape_names[m.tape] + " " + m.id + " " + form + features(m.features) + "\n";
  }
  for (const auto& s : lexicon.stems()) {
    out += "stem " + s.id;
    for (std::size_t t : s.listed) out += " " + s.morphemes[t];
    out += features(s.features);
    if (!s.gloss.empty()) out += " gloss=" + s.gloss;
    out += "\n";
  }
  return out;
}

}  // namespace mtmorph
