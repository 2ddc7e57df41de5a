#include "cardvision/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cardvision {

EllipseFit fit_ellipse(int area, const CentralMoments& m) {
  if (area < 1) throw std::invalid_argument("fit_ellipse: area must be >= 1");
  const double n = area;
  const double a = m.mu20 / n;
  const double b = m.mu02 / n;
  const double c = m.mu11 / n;
  const double common = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
  const double lambda_max = (a + b + common) / 2.0;
  const double lambda_min = std::max((a + b - common) / 2.0, 0.0);

  EllipseFit fit;
  fit.major_axis = 4.0 * std::sqrt(lambda_max);
  fit.minor_axis = 4.0 * std::sqrt(lambda_min);
  const double ratio = fit.minor_axis / fit.major_axis;
  fit.eccentricity = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  // +0.0 turns a -0.0 numerator into +0.0 so that the degenerate branch of
  // atan2 lands on +90 rather than -90.
  const double theta =
      0.5 * std::atan2(2.0 * m.mu11 + 0.0, m.mu20 - m.mu02) * 180.0 / std::numbers::pi;
  fit.orientation = theta <= -90.0 ? theta + 180.0 : theta;
  return fit;
}

double boundary_length(const Boundary& boundary) {
  if (boundary.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Point& p = boundary[i];
    const Point& q = boundary[(i + 1) % boundary.size()];
    const int dx = std::abs(p.x - q.x);
    const int dy = std::abs(p.y - q.y);
    total += (dx != 0 && dy != 0) ? std::numbers::sqrt2 : double(dx + dy);
  }
  return total;
}

std::vector<RegionProps> region_props(const LabelMap& labels,
                                      const std::vector<Boundary>& boundaries) {
  if (!boundaries.empty() &&
      boundaries.size() != static_cast<std::size_t>(labels.count)) {
    throw std::invalid_argument("region_props: boundary count mismatch");
  }

  struct Accum {
    long long n = 0;
    double sx = 0, sy = 0;
    int min_x = 0, min_y = 0, max_x = -1, max_y = -1;
  };
  std::vector<Accum> acc(labels.count + 1);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const int l = labels.labels(x, y);
      if (l == 0) continue;
      Accum& a = acc[l];
      if (a.n == 0) {
        a.min_x = a.max_x = x;
        a.min_y = a.max_y = y;
      }
      ++a.n;
      a.sx += x;
      a.sy += y;
      a.min_x = std::min(a.min_x, x);
      a.max_x = std::max(a.max_x, x);
      a.min_y = std::min(a.min_y, y);
      a.max_y = std::max(a.max_y, y);
    }
  }

  std::vector<PointF> centroids(labels.count + 1);
  for (int l = 1; l <= labels.count; ++l) {
    if (acc[l].n == 0) throw std::invalid_argument("region_props: missing label");
    centroids[l] = {acc[l].sx / acc[l].n, acc[l].sy / acc[l].n};
  }

  // Second pass over centered coordinates keeps the moments well conditioned.
  std::vector<CentralMoments> moments(labels.count + 1);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const int l = labels.labels(x, y);
      if (l == 0) continue;
      const double dx = x - centroids[l].x;
      const double dy = -(y - centroids[l].y);
      moments[l].mu20 += dx * dx;
      moments[l].mu02 += dy * dy;
      moments[l].mu11 += dx * dy;
    }
  }

  std::vector<RegionProps> out;
  out.reserve(labels.count);
  for (int l = 1; l <= labels.count; ++l) {
    const Accum& a = acc[l];
    CentralMoments m = moments[l];
    m.mu20 += a.n / 12.0;
    m.mu02 += a.n / 12.0;
    const EllipseFit fit = fit_ellipse(static_cast<int>(a.n), m);

    RegionProps p;
    p.label = l;
    p.area = static_cast<int>(a.n);
    p.bbox = {a.min_x, a.min_y, a.max_x - a.min_x + 1, a.max_y - a.min_y + 1};
    p.centroid = centroids[l];
    p.major_axis = fit.major_axis;
    p.minor_axis = fit.minor_axis;
    p.eccentricity = fit.eccentricity;
    p.orientation = fit.orientation;
    if (!boundaries.empty()) p.perimeter = boundary_length(boundaries[l - 1]);
    out.push_back(p);
  }
  return out;
}

}  // namespace cardvision
