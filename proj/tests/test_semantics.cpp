#include <algorithm>
#include <cmath>

#include "cardvision/error.hpp"
#include "cardvision/semantics.hpp"
#include "cardvision/synth.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cardvision;
using testing_support::deck;
using testing_support::templates;

namespace {

const GrayImage& card_image(Rank r, Suit s) {
  return deck()[index_of(s) * 13 + index_of(r)].image;
}

ErrorKind error_kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("deck order") {
  REQUIRE(deck().size() == 52);
  CHECK(deck()[0].rank == Rank::Ace);
  CHECK(deck()[0].suit == Suit::Spade);
  CHECK(deck()[13 + 9].rank == Rank::Ten);
  CHECK(deck()[13 + 9].suit == Suit::Heart);
}

TEST_CASE("corner geometry") {
  const SemanticsConfig cfg;
  const GrayImage c = extract_corner(card_image(Rank::Ace, Suit::Spade), cfg);
  CHECK(c.width() == 25);   // round(140 * 0.18)
  CHECK(c.height() == 56);  // round(200 * 0.28)
  CHECK(c(3, 3) == card_image(Rank::Ace, Suit::Spade)(3, 3));

  SemanticsConfig whole;
  whole.corner_w_frac = whole.corner_h_frac = 1.0;
  CHECK(extract_corner(card_image(Rank::Ace, Suit::Spade), whole) ==
        card_image(Rank::Ace, Suit::Spade));
}

TEST_CASE("blank corner is empty") {
  const SemanticsConfig cfg;
  CHECK(error_kind_of([&] { preprocess_corner(GrayImage(25, 56, 230), cfg); }) ==
        ErrorKind::EmptyCorner);
}

TEST_CASE("ace of spades corner gives two solid blobs, rank above suit") {
  const SemanticsConfig cfg;
  const BinaryImage m = preprocess_corner(extract_corner(card_image(Rank::Ace, Suit::Spade), cfg), cfg);
  const LabelMap lm = label_components(m);
  CHECK(lm.count == 2);
  // Tight crop: every outer row and column holds foreground.
  const Box b = tight_box(m);
  CHECK(b == Box{0, 0, m.width(), m.height()});
  // Solid: no holes left to fill.
  CHECK(fill_holes(m) == m);

  const CornerGlyphs g = split_corner(m, cfg);
  CHECK(g.rank.height() + g.suit.height() < m.height());
  CHECK(!g.rank.empty());
  CHECK(!g.suit.empty());
}

TEST_CASE("every card corner preprocesses to rank and suit pieces") {
  const SemanticsConfig cfg;
  for (const LabeledCard& c : deck()) {
    CAPTURE(to_string(c.rank) + " " + to_string(c.suit));
    const BinaryImage m = preprocess_corner(extract_corner(c.image, cfg), cfg);
    // The "1" and "0" of a ten run together once edges are filled and closed,
    // so tens give two pieces like everything else.
    CHECK(label_components(m).count == 2);
  }
}

TEST_CASE("ten reads through the zero glyph") {
  CHECK(glyph_key(Rank::Ten) == "0");
  const CardLabel l = read_card(card_image(Rank::Ten, Suit::Diamond), templates(), {});
  CHECK(l.rank == Rank::Ten);
  CHECK(l.suit == Suit::Diamond);
}

TEST_CASE("exemplar glyphs match their own templates") {
  const SemanticsConfig cfg;
  for (Rank r : kAllRanks) {
    const BinaryImage m = preprocess_corner(extract_corner(card_image(r, Suit::Spade), cfg), cfg);
    const CornerGlyphs g = split_corner(m, cfg);
    const GlyphScores s = score_glyphs(g, templates(), cfg);
    CHECK(s.rank[index_of(r)] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("upright and upside-down king of hearts") {
  const GrayImage& k = card_image(Rank::King, Suit::Heart);
  const CardLabel up = read_card(k, templates(), {});
  CHECK(up.rank == Rank::King);
  CHECK(up.suit == Suit::Heart);
  const CardLabel down = read_card(rotate_quarter(k, 2), templates(), {});
  CHECK(down.rank == Rank::King);
  CHECK(down.suit == Suit::Heart);
}

TEST_CASE("blank card cannot be read") {
  CHECK(error_kind_of([] { read_card(GrayImage(140, 200, 220), templates(), {}); }) ==
        ErrorKind::EmptyCorner);
}

TEST_CASE("half-scale card reads like full scale") {
  for (Rank r : {Rank::Ace, Rank::Seven, Rank::Ten, Rank::Queen}) {
    const CardLabel l = read_card(render_card(r, Suit::Diamond, 0.5), templates(), {});
    CHECK(l.rank == r);
    CHECK(l.suit == Suit::Diamond);
  }
}

TEST_CASE("label survives affine intensity changes") {
  for (const auto& [r, s] : {std::pair{Rank::Three, Suit::Club}, {Rank::Jack, Suit::Heart},
                             {Rank::Nine, Suit::Diamond}}) {
    const GrayImage& src = card_image(r, s);
    for (const auto& [a, b] : {std::pair{0.8, 10.0}, {0.6, 40.0}, {1.1, -5.0}}) {
      GrayImage img = src;
      for (auto& v : img.pixels())
        v = static_cast<std::uint8_t>(std::clamp(std::lround(a * v + b), 0L, 255L));
      const CardLabel l = read_card(img, templates(), {});
      CAPTURE(a);
      CHECK(l.rank == r);
      CHECK(l.suit == s);
    }
  }
}

TEST_CASE("reading is deterministic") {
  const GrayImage img = apply_jitter(card_image(Rank::Five, Suit::Club), {0.1, 4.0, 3});
  const CardLabel a = read_card(img, templates(), {});
  const CardLabel b = read_card(img, templates(), {});
  CHECK(a.rank == b.rank);
  CHECK(a.suit == b.suit);
  CHECK(a.rank_score == b.rank_score);
  CHECK(a.suit_score == b.suit_score);
}

TEST_CASE("low confidence floor") {
  SemanticsConfig strict;
  strict.min_confidence = 0.9999;
  // A half-scale card never matches the full-scale templates exactly.
  CHECK(error_kind_of([&] {
          read_card(render_card(Rank::Eight, Suit::Club, 0.5), templates(), strict);
        }) == ErrorKind::LowConfidence);
}

TEST_CASE("normalize glyph centres without rescaling") {
  BinaryImage g(4, 2, true);
  const BinaryImage n = normalize_glyph(g, 8, 6);
  CHECK(count_foreground(n) == 8);
  CHECK(tight_box(n) == Box{2, 2, 4, 2});
  // Larger than the window: clipped evenly.
  CHECK(normalize_glyph(BinaryImage(10, 10, true), 4, 4) == BinaryImage(4, 4, true));
}

TEST_CASE("config validation") {
  SemanticsConfig bad;
  bad.corner_w_frac = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.min_confidence = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
