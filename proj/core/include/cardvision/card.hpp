#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "cardvision/image.hpp"

namespace cardvision {

enum class Rank { Ace, Two, Three, Four, Five, Six, Seven, Eight, Nine, Ten, Jack, Queen, King };
enum class Suit { Spade, Heart, Club, Diamond };

inline constexpr std::array<Rank, 13> kAllRanks = {
    Rank::Ace,  Rank::Two,  Rank::Three, Rank::Four, Rank::Five,  Rank::Six, Rank::Seven,
    Rank::Eight, Rank::Nine, Rank::Ten,  Rank::Jack, Rank::Queen, Rank::King};
inline constexpr std::array<Suit, 4> kAllSuits = {Suit::Spade, Suit::Heart, Suit::Club,
                                                  Suit::Diamond};

inline constexpr int kCanonicalCardWidth = 140;
inline constexpr int kCanonicalCardHeight = 200;

constexpr int index_of(Rank r) { return static_cast<int>(r); }
constexpr int index_of(Suit s) { return static_cast<int>(s); }

// "A", "2".."10", "J", "Q", "K".
std::string to_string(Rank r);
// "spade", "heart", "club", "diamond".
std::string to_string(Suit s);

// Template key of the single glyph that identifies the rank: "0" for ten.
std::string glyph_key(Rank r);

// Accept both display names and glyph keys ("10" and "0" both mean ten).
std::optional<Rank> parse_rank(std::string_view text);
std::optional<Suit> parse_suit(std::string_view text);

struct CardLabel {
  Rank rank = Rank::Ace;
  Suit suit = Suit::Spade;
  double rank_score = 0.0;
  double suit_score = 0.0;
};

// An upright card picture with its known identity.
struct LabeledCard {
  GrayImage image;
  Rank rank = Rank::Ace;
  Suit suit = Suit::Spade;
};

}  // namespace cardvision
