#include "mtmorph/segment.hpp"

#include <cctype>

namespace mtmorph {

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Consonant: return "consonant";
    case SegmentKind::Vowel: return "vowel";
    case SegmentKind::PatternConsonantSlot: return "pattern-consonant";
    case SegmentKind::PatternVowelSlot: return "pattern-vowel";
  }
  return "?";
}

UnknownSymbolError::UnknownSymbolError(char symbol)
    : std::runtime_error(std::string("unknown symbol '") + symbol + "'"), symbol_(symbol) {}

bool Alphabet::is_reserved(char symbol) noexcept {
  auto c = static_cast<unsigned char>(symbol);
  if (c >= 128 || !std::isgraph(c)) return true;
  switch (symbol) {
    case 'c': case 'v': case 'C': case 'V':
    case '*': case '0': case '[': case ']': case '(': case ')':
    case ',': case '|': case '$': case '=': case '#': case ':':
      return true;
    default:
      return false;
  }
}

Alphabet Alphabet::arabic() { return from_sets("jndbslTwy'", "aiu"); }

Alphabet Alphabet::from_sets(std::string_view consonants, std::string_view vowels) {
  Alphabet alphabet;
  alphabet.table_.fill(kUnknown);
  alphabet.table_['c'] = static_cast<signed char>(SegmentKind::PatternConsonantSlot);
  alphabet.table_['v'] = static_cast<signed char>(SegmentKind::PatternVowelSlot);
  auto add = [&alphabet](std::string_view symbols, SegmentKind kind, std::vector<Segment>& out) {
    for (char s : symbols) {
      if (std::isspace(static_cast<unsigned char>(s))) continue;
      if (is_reserved(s)) throw std::invalid_argument(std::string("reserved symbol '") + s + "'");
      if (alphabet.table_[static_cast<unsigned char>(s)] != kUnknown)
        throw std::invalid_argument(std::string("symbol '") + s + "' declared twice");
      alphabet.table_[static_cast<unsigned char>(s)] = static_cast<signed char>(kind);
      out.push_back(Segment{s, kind});
    }
  };
  add(consonants, SegmentKind::Consonant, alphabet.consonants_);
  add(vowels, SegmentKind::Vowel, alphabet.vowels_);
  return alphabet;
}

std::optional<SegmentKind> Alphabet::try_classify(char symbol) const noexcept {
  auto c = static_cast<unsigned char>(symbol);
  if (c >= table_.size() || table_[c] == kUnknown) return std::nullopt;
  return static_cast<SegmentKind>(table_[c]);
}

SegmentKind Alphabet::classify(char symbol) const {
  if (auto kind = try_classify(symbol)) return *kind;
  throw UnknownSymbolError(symbol);
}

SegmentString Alphabet::segments(std::string_view text) const {
  SegmentString out;
  out.reserve(text.size());
  for (char s : text) out.push_back(segment(s));
  return out;
}

std::string to_text(std::span<const Segment> segments) {
  std::string out;
  out.reserve(segments.size());
  for (const auto& s : segments) out.push_back(s.symbol);
  return out;
}

}  // namespace mtmorph
