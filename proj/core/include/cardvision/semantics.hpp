#pragma once

#include <array>

#include "cardvision/card.hpp"
#include "cardvision/filters.hpp"
#include "cardvision/image.hpp"
#include "cardvision/morphology.hpp"
#include "cardvision/templates.hpp"

namespace cardvision {

// Rank and suit reading of an upright card.
struct SemanticsConfig {
  double corner_w_frac = 0.18;
  double corner_h_frac = 0.28;
  double min_confidence = 0.40;
  Kernel conv_kernel = Kernel::mean(3);
  double blur_sigma = 1.0;
  EdgeConfig edge{};
  int close_size = 3;
  int min_glyph_area = 8;
  // Row fraction used to separate rank from suit when no empty row exists.
  double split_fallback = 0.55;
  // Zero border added around a glyph before correlation so the template fits
  // strictly inside and can shift by a few pixels.
  int match_margin = 3;

  void validate() const;
};

GrayImage extract_corner(const GrayImage& card, const SemanticsConfig& cfg);

// blur -> equalize -> Sobel -> convolve and re-threshold -> close -> remove
// small areas -> drop border-touching parts and crop to the tight box ->
// fill holes. Throws Error(EmptyCorner) when nothing remains.
BinaryImage preprocess_corner(const GrayImage& corner, const SemanticsConfig& cfg);

struct CornerGlyphs {
  BinaryImage rank;
  BinaryImage suit;
};

// Splits a preprocessed corner at its widest empty row band (falling back to
// split_fallback of the height). Each half is cropped to its tight box; when
// the rank half is made of side-by-side pieces ("10"), the piece with the
// most foreground is kept. Throws Error(EmptyCorner) if either half is empty.
CornerGlyphs split_corner(const BinaryImage& corner_mask, const SemanticsConfig& cfg);

// Centers a glyph mask in a width x height window without rescaling; a
// glyph larger than the window is clipped evenly. Corners always come from a
// card resized to the canonical size, so glyph pixels already share one
// scale, and stretching to the tight box would let a single stray extreme
// pixel distort the whole shape.
BinaryImage normalize_glyph(const BinaryImage& glyph, int width, int height);

// Peak normalized cross-correlation of a normalized glyph against one
// template, after padding the glyph by `margin` background pixels.
double glyph_score(const BinaryImage& glyph, const BinaryImage& templ, int margin);

struct GlyphScores {
  std::array<double, 13> rank{};
  std::array<double, 4> suit{};
};

GlyphScores score_glyphs(const CornerGlyphs& glyphs, const TemplateSet& templates,
                         const SemanticsConfig& cfg);

// Argmax over each template family; ties keep the earlier template. The
// zero glyph maps to rank ten. Throws Error(LowConfidence) when either
// winning score is below min_confidence.
CardLabel classify(const BinaryImage& corner_mask, const TemplateSet& templates,
                   const SemanticsConfig& cfg);

// Resizes to the canonical card, then classifies both the card and its
// 180-degree rotation and keeps the better combined score.
CardLabel read_card(const GrayImage& card, const TemplateSet& templates,
                    const SemanticsConfig& cfg);

}  // namespace cardvision
