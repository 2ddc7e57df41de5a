#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cardvision/card.hpp"
#include "cardvision/image.hpp"
#include "cardvision/morphology.hpp"
#include "cardvision/regions.hpp"
#include "cardvision/templates.hpp"

namespace cardvision {

struct DetectorConfig {
  EdgeConfig edge{};
  // Unset: 300 px for a 640x480 scene, scaled with the scene area.
  std::optional<int> min_area;
  double rect_fill_ratio_min = 0.85;
  double card_aspect_lo = 0.62;
  double card_aspect_hi = 0.80;
  int edge_strip_width = 20;
  int canonical_width = kCanonicalCardWidth;
  int canonical_height = kCanonicalCardHeight;
  double tau_edge = 0.12;

  int min_area_for(int scene_width, int scene_height) const;
  void validate() const;
};

enum class ShapeClass { Card, Rect, Other };

// "CARD", "RECT", "OTHER".
std::string to_string(ShapeClass c);
// Green for cards, blue for other rectangles, red for everything else.
Rgb annotation_color(ShapeClass c);

struct Segmentation {
  GrayImage gray;
  BinaryImage mask;
  LabelMap labels;
  std::vector<RegionProps> props;      // index i describes label i + 1
  std::vector<Boundary> boundaries;    // index-aligned with props
};

// grayscale -> Sobel -> dilate (3x1 then 1x3) -> fill holes -> area open ->
// label -> trace -> measure.
Segmentation segment_scene(const RgbImage& scene, const DetectorConfig& cfg);

struct ShapeVerdict {
  ShapeClass shape = ShapeClass::Other;  // Rect or Other
  double fill_ratio = 0.0;
  BinaryImage upright_mask;
  // Transform that produced upright_mask from the input mask frame: rotate
  // by rotation_deg, crop upright_box, then extra_quarter_turns.
  double rotation_deg = 0.0;
  Box upright_box;
  int extra_quarter_turns = 0;
};

// De-rotates the component by its orientation and compares its area with the
// de-rotated tight box. `component` holds only this component; any frame
// (full scene or a crop) works. Landscape results get one more quarter turn
// so the long side is vertical.
ShapeVerdict classify_shape(const RegionProps& props, const BinaryImage& component,
                            const DetectorConfig& cfg);

// Applies a verdict's transform to a grayscale image in the same frame as the
// component mask passed to classify_shape.
GrayImage apply_upright(const GrayImage& frame, const ShapeVerdict& verdict);

struct EdgeVerdict {
  bool is_card = false;
  double edge_score = 1.0;
};

// Aspect gate, then mean subtractive score of the left and right strips of
// the canonical-size crop against the stored edge templates.
EdgeVerdict verify_card(const GrayImage& upright, const TemplateSet& templates,
                        const DetectorConfig& cfg);

struct Detection {
  ShapeClass shape = ShapeClass::Other;
  Boundary boundary;
  RegionProps props;
  std::optional<GrayImage> upright_crop;
  std::optional<double> fill_ratio;
  std::optional<double> edge_score;
  std::optional<CardLabel> label;
  // Why Pass 2 produced no label (EMPTY_CORNER / LOW_CONFIDENCE), if it ran.
  std::optional<std::string> label_error;
};

// Pass 1 over a scene, one detection per surviving component in raster order
// of each component's first pixel.
std::vector<Detection> detect(const RgbImage& scene, const TemplateSet& templates,
                              const DetectorConfig& cfg);

// Paints each detection's boundary in its class color.
RgbImage annotate(const RgbImage& scene, const std::vector<Detection>& detections);

}  // namespace cardvision
