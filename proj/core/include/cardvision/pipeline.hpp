#pragma once

#include <iosfwd>
#include <vector>

#include "cardvision/detector.hpp"
#include "cardvision/semantics.hpp"

namespace cardvision {

// Pass 1 followed by Pass 2 on every CARD detection. Pass 2 failures leave
// the label empty and record the reason.
std::vector<Detection> analyze_scene(const RgbImage& scene, const TemplateSet& templates,
                                     const DetectorConfig& detector,
                                     const SemanticsConfig& semantics);

// One line per detection, fields in fixed order:
//   index class bbox orientation_deg edge_score rank suit rank_score suit_score
// written as key=value pairs separated by spaces; absent values print "-".
void write_report(std::ostream& out, const std::vector<Detection>& detections);

}  // namespace cardvision
