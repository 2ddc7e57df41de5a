#include "cardvision/card.hpp"

namespace cardvision {

namespace {
constexpr std::array<std::string_view, 13> kRankNames = {
    "A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"};
constexpr std::array<std::string_view, 4> kSuitNames = {"spade", "heart", "club",
                                                        "diamond"};
}  // namespace

std::string to_string(Rank r) { return std::string(kRankNames[index_of(r)]); }

std::string to_string(Suit s) { return std::string(kSuitNames[index_of(s)]); }

std::string glyph_key(Rank r) { return r == Rank::Ten ? "0" : to_string(r); }

std::optional<Rank> parse_rank(std::string_view text) {
  if (text == "0") return Rank::Ten;
  for (Rank r : kAllRanks) {
    if (kRankNames[index_of(r)] == text) return r;
  }
  return std::nullopt;
}

std::optional<Suit> parse_suit(std::string_view text) {
  for (Suit s : kAllSuits) {
    if (kSuitNames[index_of(s)] == text) return s;
  }
  return std::nullopt;
}

}  // namespace cardvision
