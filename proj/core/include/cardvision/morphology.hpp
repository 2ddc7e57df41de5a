#pragma once

#include <vector>

#include "cardvision/image.hpp"

namespace cardvision {

// Binary probe for dilation and closing. The origin cell is the one placed
// over the pixel being computed.
class StructuringElement {
 public:
  StructuringElement(BinaryImage mask, Point origin);

  static StructuringElement square(int size);
  // size x 1, centered.
  static StructuringElement horizontal_line(int length);
  // 1 x size, centered.
  static StructuringElement vertical_line(int length);

  // Point reflection through the origin.
  StructuringElement reflected() const;

  const BinaryImage& mask() const noexcept { return mask_; }
  Point origin() const noexcept { return origin_; }
  // Offsets of the true cells relative to the origin.
  const std::vector<Point>& offsets() const noexcept { return offsets_; }

 private:
  BinaryImage mask_;
  Point origin_;
  std::vector<Point> offsets_;
};

struct EdgeConfig {
  double fudge_factor = 0.5;
};

enum class Connectivity { Four = 4, Eight = 8 };

struct LabelMap {
  Image<int> labels;  // 0 = background, components numbered 1..count
  int count = 0;

  int width() const { return labels.width(); }
  int height() const { return labels.height(); }
};

// Closed outline of one component, in tracing order (no repeated endpoint).
using Boundary = std::vector<Point>;

// Sobel gradient with automatic threshold T = 4 * mean(|g|^2); a pixel is an
// edge iff |g|^2 > T * fudge^2. The outermost pixel ring is never an edge.
BinaryImage sobel_edges(const GrayImage& img, const EdgeConfig& cfg = {});

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

// Erosion of the dilation by the reflected element. Pixels beyond the image
// count as foreground during the erosion step, so closing never eats into
// objects that touch the border.
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

// Background regions not 4-connected to the border become foreground.
BinaryImage fill_holes(const BinaryImage& img);

// Removes 8-connected components smaller than min_area pixels.
BinaryImage area_open(const BinaryImage& img, int min_area);

// Labels in raster order of first encounter.
LabelMap label_components(const BinaryImage& img,
                          Connectivity connectivity = Connectivity::Eight);

// One clockwise Moore-neighbor trace per 8-connected component, starting at
// the component's raster-first pixel and listed in label order. Holes are not
// traced.
std::vector<Boundary> trace_boundaries(const BinaryImage& img);

// Mask of a single labelled component.
BinaryImage component_mask(const LabelMap& labels, int label);

struct BorderSides {
  bool top = true;
  bool bottom = true;
  bool left = true;
  bool right = true;
};

// Removes every 8-connected component that touches one of the chosen sides.
BinaryImage clear_border(const BinaryImage& img, BorderSides sides = {});

}  // namespace cardvision
