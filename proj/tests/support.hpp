#pragma once

#include <vector>

#include "cardvision/card.hpp"
#include "cardvision/semantics.hpp"
#include "cardvision/synth.hpp"
#include "cardvision/templates.hpp"

namespace testing_support {

// Rendering and template building take a second or so; do it once per process.
inline const std::vector<cardvision::LabeledCard>& deck() {
  static const std::vector<cardvision::LabeledCard> d = cardvision::render_deck();
  return d;
}

inline const cardvision::TemplateSet& templates() {
  static const cardvision::TemplateSet ts =
      cardvision::build_templates(deck(), cardvision::SemanticsConfig{});
  return ts;
}

inline cardvision::RgbImage uniform_rgb(int w, int h, cardvision::Rgb c) {
  return cardvision::RgbImage(w, h, c);
}

}  // namespace testing_support
