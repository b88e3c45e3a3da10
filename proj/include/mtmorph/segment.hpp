#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtmorph {

enum class SegmentKind { Consonant, Vowel, PatternConsonantSlot, PatternVowelSlot };

std::string_view to_string(SegmentKind kind);

/// One transliterated phoneme or one pattern slot.
struct Segment {
  char symbol = '\0';
  SegmentKind kind = SegmentKind::Consonant;

  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

using SegmentString = std::vector<Segment>;

class UnknownSymbolError : public std::runtime_error {
 public:
  explicit UnknownSymbolError(char symbol);
  char symbol() const noexcept { return symbol_; }

 private:
  char symbol_;
};

/// Classification table from symbol to segment kind. The pattern slots
/// 'c' and 'v' are always present; consonant and vowel inventories vary
/// per grammar.
class Alphabet {
 public:
  /// j n d b s l T w y ' / a i u
  static Alphabet arabic();

  /// Throws std::invalid_argument if a symbol is reserved by the rule
  /// syntax or listed twice.
  static Alphabet from_sets(std::string_view consonants, std::string_view vowels);

  SegmentKind classify(char symbol) const;
  std::optional<SegmentKind> try_classify(char symbol) const noexcept;
  Segment segment(char symbol) const { return Segment{symbol, classify(symbol)}; }
  SegmentString segments(std::string_view text) const;

  const std::vector<Segment>& consonants() const noexcept { return consonants_; }
  const std::vector<Segment>& vowels() const noexcept { return vowels_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.consonants_ == b.consonants_ && a.vowels_ == b.vowels_;
  }

  /// Characters that can never be segment symbols.
  static bool is_reserved(char symbol) noexcept;

 private:
  Alphabet() = default;

  static constexpr signed char kUnknown = -1;
  std::array<signed char, 128> table_{};
  std::vector<Segment> consonants_;
  std::vector<Segment> vowels_;
};

std::string to_text(std::span<const Segment> segments);

}  // namespace mtmorph
