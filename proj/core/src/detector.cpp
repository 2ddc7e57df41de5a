#include "cardvision/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cardvision/matching.hpp"

namespace cardvision {
namespace {

constexpr int kCropMargin = 2;
// The segmentation mask runs a dilation step plus an edge pixel past the
// object, and de-rotation blends another pixel or so of felt into the card
// edge. Trimming 4 px keeps that seam out of the corner reader.
constexpr int kFringe = 4;

Box expand(const Box& b, int margin, int max_w, int max_h) {
  const int x0 = std::max(b.x - margin, 0);
  const int y0 = std::max(b.y - margin, 0);
  const int x1 = std::min(b.x + b.width + margin, max_w);
  const int y1 = std::min(b.y + b.height + margin, max_h);
  return Box{x0, y0, x1 - x0, y1 - y0};
}

BinaryImage component_crop(const LabelMap& labels, int label, const Box& box) {
  BinaryImage out(box.width, box.height);
  for (int y = 0; y < box.height; ++y)
    for (int x = 0; x < box.width; ++x)
      out(x, y) = labels.labels(box.x + x, box.y + y) == label;
  return out;
}

}  // namespace

int DetectorConfig::min_area_for(int scene_width, int scene_height) const {
  if (min_area) return *min_area;
  const double scale = static_cast<double>(scene_width) * scene_height / (640.0 * 480.0);
  return static_cast<int>(std::lround(300.0 * scale));
}

void DetectorConfig::validate() const {
  if (!(edge.fudge_factor > 0.0)) throw std::invalid_argument("fudge factor must be > 0");
  if (min_area && *min_area < 0) throw std::invalid_argument("min_area must be >= 0");
  if (!(rect_fill_ratio_min > 0.0 && rect_fill_ratio_min < 1.0)) {
    throw std::invalid_argument("rect_fill_ratio_min must lie in (0, 1)");
  }
  if (!(card_aspect_lo > 0.0 && card_aspect_lo < card_aspect_hi && card_aspect_hi < 1.0)) {
    throw std::invalid_argument("card aspect window must satisfy 0 < lo < hi < 1");
  }
  if (!(tau_edge > 0.0 && tau_edge < 1.0)) {
    throw std::invalid_argument("tau_edge must lie in (0, 1)");
  }
  if (edge_strip_width < 1 || canonical_width < edge_strip_width ||
      canonical_height < edge_strip_width) {
    throw std::invalid_argument("canonical card must be at least the strip width");
  }
}

std::string to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::Card: return "CARD";
    case ShapeClass::Rect: return "RECT";
    case ShapeClass::Other: return "OTHER";
  }
  return "OTHER";
}

Rgb annotation_color(ShapeClass c) {
  switch (c) {
    case ShapeClass::Card: return {0, 255, 0};
    case ShapeClass::Rect: return {0, 0, 255};
    case ShapeClass::Other: return {255, 0, 0};
  }
  return {255, 0, 0};
}

Segmentation segment_scene(const RgbImage& scene, const DetectorConfig& cfg) {
  if (scene.width() < 3 || scene.height() < 3) {
    throw std::invalid_argument("segment_scene: scene must be at least 3x3");
  }
  Segmentation seg;
  seg.gray = to_grayscale(scene);
  BinaryImage mask = sobel_edges(seg.gray, cfg.edge);
  mask = dilate(mask, StructuringElement::horizontal_line(3));
  mask = dilate(mask, StructuringElement::vertical_line(3));
  mask = fill_holes(mask);
  mask = area_open(mask, cfg.min_area_for(scene.width(), scene.height()));
  seg.mask = std::move(mask);
  seg.labels = label_components(seg.mask, Connectivity::Eight);
  seg.boundaries = trace_boundaries(seg.mask);
  seg.props = region_props(seg.labels, seg.boundaries);
  return seg;
}

ShapeVerdict classify_shape(const RegionProps& props, const BinaryImage& component,
                            const DetectorConfig& cfg) {
  if (props.area < 1) throw std::invalid_argument("classify_shape: empty component");
  ShapeVerdict v;
  v.rotation_deg = -props.orientation;
  const BinaryImage rotated = lower_mask(rotate(lift_mask(component), v.rotation_deg, 0));
  v.upright_box = tight_box(rotated);
  if (v.upright_box.empty()) {
    // Sub-pixel slivers can vanish under resampling; keep them unrotated.
    v.rotation_deg = 0.0;
    v.upright_box = tight_box(component);
    v.upright_mask = crop(component, v.upright_box);
  } else {
    v.upright_mask = crop(rotated, v.upright_box);
  }
  v.fill_ratio = static_cast<double>(props.area) /
                 (static_cast<double>(v.upright_box.width) * v.upright_box.height);
  if (v.upright_box.width > v.upright_box.height) {
    v.extra_quarter_turns = 1;
    v.upright_mask = rotate_quarter(v.upright_mask, 1);
  }
  v.shape = v.fill_ratio >= cfg.rect_fill_ratio_min ? ShapeClass::Rect : ShapeClass::Other;
  return v;
}

GrayImage apply_upright(const GrayImage& frame, const ShapeVerdict& verdict) {
  const GrayImage rotated = rotate(frame, verdict.rotation_deg, 0);
  Box box = verdict.upright_box;
  if (box.width > 4 * kFringe && box.height > 4 * kFringe) {
    box = Box{box.x + kFringe, box.y + kFringe, box.width - 2 * kFringe, box.height - 2 * kFringe};
  }
  return rotate_quarter(crop(rotated, box), verdict.extra_quarter_turns);
}

EdgeVerdict verify_card(const GrayImage& upright, const TemplateSet& templates,
                        const DetectorConfig& cfg) {
  if (upright.empty()) return {};
  const double lo = std::min(upright.width(), upright.height());
  const double hi = std::max(upright.width(), upright.height());
  const double aspect = lo / hi;
  if (aspect < cfg.card_aspect_lo || aspect > cfg.card_aspect_hi) return {false, 1.0};

  const int sw = cfg.edge_strip_width;
  const int cw = cfg.canonical_width;
  const int ch = cfg.canonical_height;
  if (templates.left_edge.width() != sw || templates.left_edge.height() != ch) {
    throw std::invalid_argument("verify_card: edge templates do not match the configured strip");
  }
  const GrayImage portrait =
      upright.width() > upright.height() ? rotate_quarter(upright, 1) : upright;
  const GrayImage card = resize(portrait, cw, ch);
  const double left = subtractive_score(crop(card, Box{0, 0, sw, ch}), templates.left_edge);
  const double right =
      subtractive_score(crop(card, Box{cw - sw, 0, sw, ch}), templates.right_edge);
  const double score = (left + right) / 2.0;
  return {score <= cfg.tau_edge, score};
}

std::vector<Detection> detect(const RgbImage& scene, const TemplateSet& templates,
                              const DetectorConfig& cfg) {
  cfg.validate();
  const Segmentation seg = segment_scene(scene, cfg);

  std::vector<Detection> out;
  out.reserve(seg.props.size());
  for (std::size_t i = 0; i < seg.props.size(); ++i) {
    const RegionProps& props = seg.props[i];
    const Box box = expand(props.bbox, kCropMargin, scene.width(), scene.height());
    const BinaryImage component = component_crop(seg.labels, props.label, box);

    Detection d;
    d.boundary = seg.boundaries[i];
    d.props = props;
    const ShapeVerdict shape = classify_shape(props, component, cfg);
    d.fill_ratio = shape.fill_ratio;
    d.shape = shape.shape;
    if (shape.shape == ShapeClass::Rect) {
      GrayImage upright = apply_upright(crop(seg.gray, box), shape);
      const EdgeVerdict edge = verify_card(upright, templates, cfg);
      d.edge_score = edge.edge_score;
      if (edge.is_card) d.shape = ShapeClass::Card;
      d.upright_crop = std::move(upright);
    }
    out.push_back(std::move(d));
  }
  return out;
}

RgbImage annotate(const RgbImage& scene, const std::vector<Detection>& detections) {
  RgbImage out = scene;
  for (const Detection& d : detections) {
    const Rgb color = annotation_color(d.shape);
    for (const Point& p : d.boundary) {
      if (out.contains(p.x, p.y)) out(p.x, p.y) = color;
    }
  }
  return out;
}

}  // namespace cardvision
