#pragma once

#include "cardvision/image.hpp"

namespace cardvision {

// Full normalized cross-correlation surface, (image + template - 1) in each
// dimension. Entry (u, v) places the template's bottom-right cell over image
// pixel (u, v); the image is zero outside its bounds.
using CorrSurface = RealImage;

struct Peak {
  double value = 0.0;
  Point offset;
};

// Template must be strictly smaller than the image in both dimensions and
// not constant. Windows with zero variance correlate as 0. Local image sums
// come from integral tables, so cost is O(image * template) for the
// numerator only.
CorrSurface normxcorr(const RealImage& templ, const RealImage& image);

// Maximum and its raster-first location.
Peak best_match(const CorrSurface& surface);

// mean(|a - b|) / 255.
double subtractive_score(const GrayImage& a, const GrayImage& b);

}  // namespace cardvision
