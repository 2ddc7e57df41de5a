#pragma once

#include <vector>

#include "cardvision/image.hpp"
#include "cardvision/morphology.hpp"

namespace cardvision {

// Ellipse-equivalent geometry of one labelled component.
struct RegionProps {
  int label = 0;
  int area = 0;
  double perimeter = 0.0;
  Box bbox;
  PointF centroid;
  double major_axis = 0.0;
  double minor_axis = 0.0;
  double eccentricity = 0.0;
  // Degrees counter-clockwise from the x axis as displayed, in (-90, 90].
  double orientation = 0.0;
};

// Second central moments with the 1/12 per-pixel variance term; mu11 uses an
// upward y axis so that orientation reads counter-clockwise on screen.
struct CentralMoments {
  double mu20 = 0.0;
  double mu02 = 0.0;
  double mu11 = 0.0;
};

// Geometry derived from an area and its central moments.
struct EllipseFit {
  double major_axis = 0.0;
  double minor_axis = 0.0;
  double eccentricity = 0.0;
  double orientation = 0.0;
};

EllipseFit fit_ellipse(int area, const CentralMoments& m);

// Closed polyline length; diagonal steps count sqrt(2).
double boundary_length(const Boundary& boundary);

// `boundaries` must be index-aligned with labels 1..count (as produced by
// trace_boundaries on the same mask); pass an empty vector to skip
// perimeters.
std::vector<RegionProps> region_props(const LabelMap& labels,
                                      const std::vector<Boundary>& boundaries);

}  // namespace cardvision
