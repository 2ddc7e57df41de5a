#pragma once

#include <array>
#include <filesystem>
#include <span>

#include "cardvision/card.hpp"
#include "cardvision/image.hpp"

namespace cardvision {

struct SemanticsConfig;

// Everything both passes compare against: grayscale left/right edge strips of
// the canonical card, and one binary glyph per rank (ten is keyed "0") and per
// suit, all glyphs sharing one size.
struct TemplateSet {
  GrayImage left_edge;
  GrayImage right_edge;
  std::array<BinaryImage, 13> ranks;  // indexed by index_of(Rank)
  std::array<BinaryImage, 4> suits;   // indexed by index_of(Suit)

  int glyph_width() const { return ranks[0].width(); }
  int glyph_height() const { return ranks[0].height(); }

  // Throws Error(Template) naming the first violated invariant.
  void validate() const;

  bool operator==(const TemplateSet&) const = default;
};

struct TemplateGeometry {
  int card_width = kCanonicalCardWidth;
  int card_height = kCanonicalCardHeight;
  int edge_strip_width = 20;
  int glyph_width = 24;
  int glyph_height = 32;
};

// Edge strips are the per-pixel mean over all cards; each glyph comes from
// the first card in `cards` carrying that rank (resp. suit).
TemplateSet build_templates(std::span<const LabeledCard> cards,
                            const SemanticsConfig& semantics,
                            const TemplateGeometry& geometry = {});

// Directory layout: manifest.tsv plus one PGM per template. Manifest lines
// are `kind<TAB>key<TAB>filename<TAB>width<TAB>height`.
void save_templates(const TemplateSet& templates, const std::filesystem::path& dir);
TemplateSet load_templates(const std::filesystem::path& dir);

}  // namespace cardvision
