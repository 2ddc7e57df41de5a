#include "cardvision/pipeline.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "cardvision/error.hpp"

namespace cardvision {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::vector<Detection> analyze_scene(const RgbImage& scene, const TemplateSet& templates,
                                     const DetectorConfig& detector,
                                     const SemanticsConfig& semantics) {
  std::vector<Detection> detections = detect(scene, templates, detector);
  for (Detection& d : detections) {
    if (d.shape != ShapeClass::Card || !d.upright_crop) continue;
    try {
      d.label = read_card(*d.upright_crop, templates, semantics);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyCorner && e.kind() != ErrorKind::LowConfidence) throw;
      d.label_error = to_string(e.kind());
    }
  }
  return detections;
}

void write_report(std::ostream& out, const std::vector<Detection>& detections) {
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Detection& d = detections[i];
    const Box& b = d.props.bbox;
    out << "index=" << i << " class=" << to_string(d.shape) << " bbox=" << b.x << ','
        << b.y << ',' << b.width << ',' << b.height
        << " orientation_deg=" << fixed(d.props.orientation, 2)
        << " edge_score=" << (d.edge_score ? fixed(*d.edge_score, 4) : "-");
    if (d.label) {
      out << " rank=" << to_string(d.label->rank) << " suit=" << to_string(d.label->suit)
          << " rank_score=" << fixed(d.label->rank_score, 4)
          << " suit_score=" << fixed(d.label->suit_score, 4);
    } else {
      out << " rank=- suit=- rank_score=- suit_score=-";
    }
    out << '\n';
  }
}

}  // namespace cardvision
