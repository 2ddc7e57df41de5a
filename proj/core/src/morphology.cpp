#include "cardvision/morphology.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cardvision {
namespace {

constexpr std::array<Point, 4> kFour = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<Point, 8> kEight = {
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};

// Moore neighborhood in clockwise order (y down), starting west.
constexpr std::array<Point, 8> kMoore = {
    {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int moore_index(Point d) {
  for (int i = 0; i < 8; ++i) {
    if (kMoore[i] == d) return i;
  }
  throw std::logic_error("not a Moore neighbor offset");
}

BinaryImage erode_outside_true(const BinaryImage& img,
                               const StructuringElement& se) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      bool all = true;
      for (const Point& d : se.offsets()) {
        const int sx = x + d.x;
        const int sy = y + d.y;
        if (img.contains(sx, sy) && !img(sx, sy)) {
          all = false;
          break;
        }
      }
      out(x, y) = all;
    }
  }
  return out;
}

}  // namespace

StructuringElement::StructuringElement(BinaryImage mask, Point origin)
    : mask_(std::move(mask)), origin_(origin) {
  if (!mask_.contains(origin.x, origin.y)) {
    throw std::invalid_argument("structuring element origin outside mask");
  }
  for (int y = 0; y < mask_.height(); ++y)
    for (int x = 0; x < mask_.width(); ++x)
      if (mask_(x, y)) offsets_.push_back({x - origin.x, y - origin.y});
  if (offsets_.empty()) {
    throw std::invalid_argument("structuring element has no true cell");
  }
}

StructuringElement StructuringElement::square(int size) {
  if (size < 1) throw std::invalid_argument("square size must be >= 1");
  return StructuringElement(BinaryImage(size, size, true), {size / 2, size / 2});
}

StructuringElement StructuringElement::horizontal_line(int length) {
  if (length < 1) throw std::invalid_argument("line length must be >= 1");
  return StructuringElement(BinaryImage(length, 1, true), {length / 2, 0});
}

StructuringElement StructuringElement::vertical_line(int length) {
  if (length < 1) throw std::invalid_argument("line length must be >= 1");
  return StructuringElement(BinaryImage(1, length, true), {0, length / 2});
}

StructuringElement StructuringElement::reflected() const {
  const int w = mask_.width();
  const int h = mask_.height();
  return StructuringElement(rotate_quarter(mask_, 2),
                            {w - 1 - origin_.x, h - 1 - origin_.y});
}

BinaryImage sobel_edges(const GrayImage& img, const EdgeConfig& cfg) {
  if (img.width() < 3 || img.height() < 3) {
    throw std::invalid_argument("sobel_edges: image must be at least 3x3");
  }
  if (!(cfg.fudge_factor > 0.0)) {
    throw std::invalid_argument("sobel_edges: fudge factor must be > 0");
  }
  const int w = img.width();
  const int h = img.height();
  RealImage mag2(w, h);
  double total = 0.0;
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, w - 1);
      const double gx = (img(xp, ym) + 2.0 * img(xp, y) + img(xp, yp)) -
                        (img(xm, ym) + 2.0 * img(xm, y) + img(xm, yp));
      const double gy = (img(xm, yp) + 2.0 * img(x, yp) + img(xp, yp)) -
                        (img(xm, ym) + 2.0 * img(x, ym) + img(xp, ym));
      const double m = gx * gx + gy * gy;
      mag2(x, y) = m;
      total += m;
    }
  }
  const double threshold = 4.0 * total / (static_cast<double>(w) * h);
  const double cutoff = threshold * cfg.fudge_factor * cfg.fudge_factor;

  BinaryImage out(w, h);
  for (int y = 1; y < h - 1; ++y)
    for (int x = 1; x < w - 1; ++x) out(x, y) = mag2(x, y) > cutoff;
  return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      bool any = false;
      for (const Point& d : se.offsets()) {
        const int sx = x + d.x;
        const int sy = y + d.y;
        if (img.contains(sx, sy) && img(sx, sy)) {
          any = true;
          break;
        }
      }
      out(x, y) = any;
    }
  }
  return out;
}

BinaryImage close(const BinaryImage& img, const StructuringElement& se) {
  return erode_outside_true(dilate(img, se), se.reflected());
}

BinaryImage fill_holes(const BinaryImage& img) {
  const int w = img.width();
  const int h = img.height();
  BinaryImage reached(w, h);
  std::vector<Point> stack;
  auto seed = [&](int x, int y) {
    if (!img(x, y) && !reached(x, y)) {
      reached(x, y) = true;
      stack.push_back({x, y});
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    for (const Point& d : kFour) {
      const int nx = p.x + d.x;
      const int ny = p.y + d.y;
      if (img.contains(nx, ny)) seed(nx, ny);
    }
  }
  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out(x, y) = img(x, y) || !reached(x, y);
  return out;
}

LabelMap label_components(const BinaryImage& img, Connectivity connectivity) {
  const int w = img.width();
  const int h = img.height();
  LabelMap map{Image<int>(w, h, 0), 0};
  const std::span<const Point> neighbors =
      connectivity == Connectivity::Four ? std::span<const Point>(kFour)
                                         : std::span<const Point>(kEight);
  std::vector<Point> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!img(x, y) || map.labels(x, y) != 0) continue;
      const int label = ++map.count;
      map.labels(x, y) = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        for (const Point& d : neighbors) {
          const int nx = p.x + d.x;
          const int ny = p.y + d.y;
          if (img.contains(nx, ny) && img(nx, ny) && map.labels(nx, ny) == 0) {
            map.labels(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
    }
  }
  return map;
}

BinaryImage area_open(const BinaryImage& img, int min_area) {
  if (min_area < 0) throw std::invalid_argument("area_open: min_area < 0");
  const LabelMap map = label_components(img, Connectivity::Eight);
  std::vector<int> area(map.count + 1, 0);
  for (int v : map.labels.pixels()) ++area[v];
  BinaryImage out(img.width(), img.height());
  auto src = map.labels.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] != 0 && area[src[i]] >= min_area;
  }
  return out;
}

std::vector<Boundary> trace_boundaries(const BinaryImage& img) {
  const LabelMap map = label_components(img, Connectivity::Eight);
  std::vector<Point> starts(map.count + 1, Point{-1, -1});
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const int l = map.labels(x, y);
      if (l != 0 && starts[l].x < 0) starts[l] = {x, y};
    }
  }

  auto on = [&](Point p) { return img.contains(p.x, p.y) && img(p.x, p.y); };

  // Returns the next boundary pixel clockwise from `current`, scanning from
  // just past `backtrack`; updates backtrack to the last background neighbor.
  auto step = [&](Point current, Point& backtrack) -> Point {
    const int k0 = moore_index({backtrack.x - current.x, backtrack.y - current.y});
    for (int i = 1; i <= 8; ++i) {
      const int d = (k0 + i) % 8;
      const Point p{current.x + kMoore[d].x, current.y + kMoore[d].y};
      if (on(p)) {
        const Point prev = kMoore[(d + 7) % 8];
        backtrack = {current.x + prev.x, current.y + prev.y};
        return p;
      }
    }
    return current;  // isolated pixel
  };

  std::vector<Boundary> out;
  out.reserve(map.count);
  for (int l = 1; l <= map.count; ++l) {
    const Point start = starts[l];
    Boundary path{start};
    Point backtrack{start.x - 1, start.y};
    const Point second = step(start, backtrack);
    if (second == start) {
      out.push_back(std::move(path));
      continue;
    }
    Point current = second;
    // Stop once the trace leaves the start pixel towards `second` again.
    for (;;) {
      Point bt = backtrack;
      const Point next = step(current, bt);
      if (current == start && next == second) break;
      path.push_back(current);
      backtrack = bt;
      current = next;
    }
    out.push_back(std::move(path));
  }
  return out;
}

BinaryImage component_mask(const LabelMap& labels, int label) {
  BinaryImage out(labels.width(), labels.height());
  auto src = labels.labels.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] == label;
  return out;
}

BinaryImage clear_border(const BinaryImage& img, BorderSides sides) {
  const LabelMap map = label_components(img, Connectivity::Eight);
  std::vector<bool> touches(map.count + 1, false);
  const int w = img.width();
  const int h = img.height();
  for (int x = 0; x < w; ++x) {
    if (sides.top) touches[map.labels(x, 0)] = true;
    if (sides.bottom) touches[map.labels(x, h - 1)] = true;
  }
  for (int y = 0; y < h; ++y) {
    if (sides.left) touches[map.labels(0, y)] = true;
    if (sides.right) touches[map.labels(w - 1, y)] = true;
  }
  touches[0] = false;
  BinaryImage out(w, h);
  auto src = map.labels.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] != 0 && !touches[src[i]];
  }
  return out;
}

}  // namespace cardvision
