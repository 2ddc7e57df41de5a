#include "cardvision/semantics.hpp"

#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardvision/error.hpp"
#include "cardvision/matching.hpp"

namespace cardvision {
namespace {

[[noreturn]] void empty_corner(const std::string& why) {
  throw Error(ErrorKind::EmptyCorner, "EMPTY_CORNER: " + why);
}

struct Run {
  int begin = 0;
  int end = 0;  // exclusive
  int length() const { return end - begin; }
};

// Maximal runs of indices where `occupied` is false, strictly inside the
// occupied span.
std::vector<Run> interior_gaps(const std::vector<int>& occupied) {
  std::vector<Run> gaps;
  const int n = static_cast<int>(occupied.size());
  int i = 0;
  while (i < n && occupied[i] == 0) ++i;
  while (i < n) {
    while (i < n && occupied[i] != 0) ++i;
    const int start = i;
    while (i < n && occupied[i] == 0) ++i;
    if (i < n && i > start) gaps.push_back({start, i});
  }
  return gaps;
}

BinaryImage crop_rows(const BinaryImage& mask, int begin, int end) {
  return crop(mask, Box{0, begin, mask.width(), end - begin});
}

BinaryImage tighten(const BinaryImage& mask) {
  const Box box = tight_box(mask);
  if (box.empty()) return BinaryImage{};
  return crop(mask, box);
}

// Keeps the column band with the most foreground when the glyph consists of
// pieces separated by empty columns.
BinaryImage dominant_column_band(const BinaryImage& glyph) {
  std::vector<int> cols(glyph.width(), 0);
  for (int y = 0; y < glyph.height(); ++y)
    for (int x = 0; x < glyph.width(); ++x) cols[x] += glyph(x, y);
  const std::vector<Run> gaps = interior_gaps(cols);
  if (gaps.empty()) return glyph;

  std::vector<Run> bands;
  int start = 0;
  for (const Run& g : gaps) {
    bands.push_back({start, g.begin});
    start = g.end;
  }
  bands.push_back({start, glyph.width()});

  Run best = bands.front();
  int best_mass = -1;
  for (const Run& b : bands) {
    int mass = 0;
    for (int x = b.begin; x < b.end; ++x) mass += cols[x];
    if (mass > best_mass) {
      best_mass = mass;
      best = b;
    }
  }
  return tighten(crop(glyph, Box{best.begin, 0, best.length(), glyph.height()}));
}

template <std::size_t N>
std::size_t argmax(const std::array<double, N>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace

void SemanticsConfig::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(corner_w_frac) || !in_unit(corner_h_frac)) {
    throw std::invalid_argument("corner fractions must lie in (0, 1]");
  }
  if (!(min_confidence > 0.0 && min_confidence < 1.0)) {
    throw std::invalid_argument("min_confidence must lie in (0, 1)");
  }
  if (!(blur_sigma > 0.0)) throw std::invalid_argument("blur sigma must be > 0");
  if (!(edge.fudge_factor > 0.0)) throw std::invalid_argument("fudge factor must be > 0");
  if (close_size < 1) throw std::invalid_argument("close size must be >= 1");
  if (min_glyph_area < 0) throw std::invalid_argument("min glyph area must be >= 0");
  if (!(split_fallback > 0.0 && split_fallback < 1.0)) {
    throw std::invalid_argument("split fallback must lie in (0, 1)");
  }
  if (match_margin < 1) throw std::invalid_argument("match margin must be >= 1");
}

GrayImage extract_corner(const GrayImage& card, const SemanticsConfig& cfg) {
  const int w = std::max(1, static_cast<int>(std::lround(card.width() * cfg.corner_w_frac)));
  const int h = std::max(1, static_cast<int>(std::lround(card.height() * cfg.corner_h_frac)));
  return crop(card, Box{0, 0, std::min(w, card.width()), std::min(h, card.height())});
}

BinaryImage preprocess_corner(const GrayImage& corner, const SemanticsConfig& cfg) {
  if (corner.empty()) throw std::invalid_argument("preprocess_corner: empty corner");
  if (corner.width() < 3 || corner.height() < 3) empty_corner("corner smaller than 3x3");

  const GrayImage smoothed = gaussian_blur(corner, cfg.blur_sigma);
  const GrayImage equalized = hist_equalize(smoothed);
  const BinaryImage edges = sobel_edges(equalized, cfg.edge);

  RealImage edge_values(edges.width(), edges.height());
  for (std::size_t i = 0; i < edges.size(); ++i) edge_values.pixels()[i] = edges.pixels()[i];
  const RealImage spread = conv2_same(edge_values, cfg.conv_kernel);
  BinaryImage thick(edges.width(), edges.height());
  for (std::size_t i = 0; i < thick.size(); ++i) thick.pixels()[i] = spread.pixels()[i] > 1e-12;

  BinaryImage mask = close(thick, StructuringElement::square(cfg.close_size));
  mask = area_open(mask, cfg.min_glyph_area);
  // Parts touching the card's own top or left edge are background leaking
  // in from a loose crop; the right and bottom cuts pass through card stock.
  mask = clear_border(mask, BorderSides{.top = true, .bottom = false, .left = true, .right = false});
  const Box box = tight_box(mask);
  if (box.empty()) empty_corner("no foreground survived preprocessing");
  return fill_holes(crop(mask, box));
}

CornerGlyphs split_corner(const BinaryImage& corner_mask, const SemanticsConfig& cfg) {
  const BinaryImage mask = tighten(corner_mask);
  if (mask.empty()) empty_corner("blank corner mask");

  std::vector<int> rows(mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) rows[y] += mask(x, y);

  if (mask.height() < 2) empty_corner("corner too short to hold rank and suit");
  int rank_end = 0;
  int suit_begin = 0;
  const std::vector<Run> gaps = interior_gaps(rows);
  if (!gaps.empty()) {
    Run widest = gaps.front();
    for (const Run& g : gaps) {
      if (g.length() > widest.length()) widest = g;
    }
    rank_end = widest.begin;
    suit_begin = widest.end;
  } else {
    rank_end = suit_begin =
        std::clamp(static_cast<int>(std::lround(mask.height() * cfg.split_fallback)), 1,
                   mask.height() - 1);
  }
  CornerGlyphs out;
  out.rank = tighten(crop_rows(mask, 0, rank_end));
  out.suit = tighten(crop_rows(mask, suit_begin, mask.height()));
  if (out.rank.empty()) empty_corner("no rank glyph");
  if (out.suit.empty()) empty_corner("no suit glyph");
  out.rank = dominant_column_band(out.rank);
  return out;
}

BinaryImage normalize_glyph(const BinaryImage& glyph, int width, int height) {
  if (glyph.empty()) throw std::invalid_argument("normalize_glyph: empty glyph");
  if (width < 1 || height < 1) throw std::invalid_argument("normalize_glyph: empty window");
  BinaryImage out(width, height);
  const int ox = (width - glyph.width()) / 2;
  const int oy = (height - glyph.height()) / 2;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int gx = x - ox;
      const int gy = y - oy;
      out(x, y) = glyph.contains(gx, gy) && glyph(gx, gy);
    }
  }
  return out;
}

double glyph_score(const BinaryImage& glyph, const BinaryImage& templ, int margin) {
  const RealImage image = to_real(lift_mask(pad(glyph, margin, false)));
  const CorrSurface surface = normxcorr(to_real(lift_mask(templ)), image);
  return best_match(surface).value;
}

GlyphScores score_glyphs(const CornerGlyphs& glyphs, const TemplateSet& templates,
                         const SemanticsConfig& cfg) {
  const int gw = templates.glyph_width();
  const int gh = templates.glyph_height();
  const BinaryImage rank = normalize_glyph(glyphs.rank, gw, gh);
  const BinaryImage suit = normalize_glyph(glyphs.suit, gw, gh);
  GlyphScores scores;
  for (std::size_t i = 0; i < scores.rank.size(); ++i) {
    scores.rank[i] = glyph_score(rank, templates.ranks[i], cfg.match_margin);
  }
  for (std::size_t i = 0; i < scores.suit.size(); ++i) {
    scores.suit[i] = glyph_score(suit, templates.suits[i], cfg.match_margin);
  }
  return scores;
}

CardLabel classify(const BinaryImage& corner_mask, const TemplateSet& templates,
                   const SemanticsConfig& cfg) {
  const CornerGlyphs glyphs = split_corner(corner_mask, cfg);
  const GlyphScores scores = score_glyphs(glyphs, templates, cfg);

  CardLabel label;
  const std::size_t r = argmax(scores.rank);
  const std::size_t s = argmax(scores.suit);
  // Ranks are matched as single glyphs; the "0" template stands for ten.
  label.rank = kAllRanks[r];
  label.suit = kAllSuits[s];
  label.rank_score = scores.rank[r];
  label.suit_score = scores.suit[s];
  if (label.rank_score < cfg.min_confidence || label.suit_score < cfg.min_confidence) {
    throw Error(ErrorKind::LowConfidence,
                "LOW_CONFIDENCE: best rank " + glyph_key(label.rank) + " scored " +
                    std::to_string(label.rank_score) + ", best suit " +
                    to_string(label.suit) + " scored " + std::to_string(label.suit_score));
  }
  return label;
}

CardLabel read_card(const GrayImage& card, const TemplateSet& templates,
                    const SemanticsConfig& cfg) {
  if (card.empty()) throw std::invalid_argument("read_card: empty image");
  const GrayImage upright = resize(card, kCanonicalCardWidth, kCanonicalCardHeight);

  std::optional<CardLabel> best;
  std::exception_ptr first_error;
  for (int turns : {0, 2}) {
    try {
      const GrayImage oriented = rotate_quarter(upright, turns);
      const BinaryImage mask = preprocess_corner(extract_corner(oriented, cfg), cfg);
      const CardLabel label = classify(mask, templates, cfg);
      if (!best || label.rank_score + label.suit_score >
                       best->rank_score + best->suit_score) {
        best = label;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyCorner && e.kind() != ErrorKind::LowConfidence) throw;
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (!best) std::rethrow_exception(first_error);
  return *best;
}

}  // namespace cardvision
