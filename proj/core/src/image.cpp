#include "cardvision/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cardvision/error.hpp"

namespace cardvision {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "IO_ERROR";
    case ErrorKind::Format: return "FORMAT_ERROR";
    case ErrorKind::Template: return "TEMPLATE_ERROR";
    case ErrorKind::EmptyCorner: return "EMPTY_CORNER";
    case ErrorKind::LowConfidence: return "LOW_CONFIDENCE";
  }
  return "UNKNOWN";
}

namespace {

std::uint8_t clamp_round(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

GrayImage to_grayscale(const RgbImage& img) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Rgb p = src[i];
    dst[i] = clamp_round(0.299 * p.r + 0.587 * p.g + 0.114 * p.b);
  }
  return out;
}

BinaryImage binarize(const GrayImage& img, int level) {
  BinaryImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > level;
  return out;
}

int otsu_level(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("otsu_level: empty image");

  std::array<std::int64_t, 256> hist{};
  for (auto v : img.pixels()) ++hist[v];

  const auto total = static_cast<std::int64_t>(img.size());
  std::int64_t total_sum = 0;
  for (int v = 0; v < 256; ++v) total_sum += v * hist[v];

  // Between-class variance is proportional to
  //   (S0 * N - S * n0)^2 / (n0 * n1)
  // where n0, S0 are the count and intensity sum of the class <= level.
  int best_level = 0;
  long double best = -1.0L;
  std::int64_t n0 = 0;
  std::int64_t s0 = 0;
  for (int level = 0; level < 256; ++level) {
    n0 += hist[level];
    s0 += level * hist[level];
    const std::int64_t n1 = total - n0;
    long double score = 0.0L;
    if (n0 > 0 && n1 > 0) {
      const long double diff =
          static_cast<long double>(s0) * total -
          static_cast<long double>(total_sum) * n0;
      score = diff * diff / (static_cast<long double>(n0) * n1);
    }
    if (score > best) {
      best = score;
      best_level = level;
    }
  }
  return best_level;
}

GrayImage resize(const GrayImage& img, int new_width, int new_height) {
  if (new_width < 1 || new_height < 1) {
    throw std::invalid_argument("resize: target dimensions must be >= 1");
  }
  if (img.empty()) throw std::invalid_argument("resize: empty image");
  if (new_width == img.width() && new_height == img.height()) return img;

  const double sx = static_cast<double>(img.width()) / new_width;
  const double sy = static_cast<double>(img.height()) / new_height;
  const int max_x = img.width() - 1;
  const int max_y = img.height() - 1;

  GrayImage out(new_width, new_height);
  for (int y = 0; y < new_height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, double(max_y));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, max_y);
    const double wy = fy - y0;
    for (int x = 0; x < new_width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, double(max_x));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, max_x);
      const double wx = fx - x0;
      const double top = img(x0, y0) * (1.0 - wx) + img(x1, y0) * wx;
      const double bottom = img(x0, y1) * (1.0 - wx) + img(x1, y1) * wx;
      out(x, y) = clamp_round(top * (1.0 - wy) + bottom * wy);
    }
  }
  return out;
}

GrayImage rotate(const GrayImage& img, double angle_deg, std::uint8_t fill) {
  if (img.empty()) return img;

  const double turns = angle_deg / 90.0;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) < 1e-9) {
    return rotate_quarter(img, static_cast<int>(std::fmod(nearest, 4.0)));
  }

  const double rad = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const int w = img.width();
  const int h = img.height();
  const int out_w = std::max(
      1, static_cast<int>(std::ceil(w * std::abs(c) + h * std::abs(s) - 1e-6)));
  const int out_h = std::max(
      1, static_cast<int>(std::ceil(w * std::abs(s) + h * std::abs(c) - 1e-6)));

  const double in_cx = (w - 1) / 2.0;
  const double in_cy = (h - 1) / 2.0;
  const double out_cx = (out_w - 1) / 2.0;
  const double out_cy = (out_h - 1) / 2.0;

  GrayImage out(out_w, out_h, fill);
  for (int y = 0; y < out_h; ++y) {
    const double dy = y - out_cy;
    for (int x = 0; x < out_w; ++x) {
      const double dx = x - out_cx;
      // Inverse of the forward map x' = c*dx + s*dy, y' = -s*dx + c*dy.
      double fx = c * dx - s * dy + in_cx;
      double fy = s * dx + c * dy + in_cy;
      if (fx < -0.5 || fy < -0.5 || fx > w - 0.5 || fy > h - 0.5) continue;
      fx = std::clamp(fx, 0.0, double(w - 1));
      fy = std::clamp(fy, 0.0, double(h - 1));
      const int x0 = static_cast<int>(fx);
      const int y0 = static_cast<int>(fy);
      const int x1 = std::min(x0 + 1, w - 1);
      const int y1 = std::min(y0 + 1, h - 1);
      const double wx = fx - x0;
      const double wy = fy - y0;
      const double top = img(x0, y0) * (1.0 - wx) + img(x1, y0) * wx;
      const double bottom = img(x0, y1) * (1.0 - wx) + img(x1, y1) * wx;
      out(x, y) = clamp_round(top * (1.0 - wy) + bottom * wy);
    }
  }
  return out;
}

Box tight_box(const BinaryImage& mask) {
  int min_x = mask.width(), min_y = mask.height(), max_x = -1, max_y = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) return Box{};
  return Box{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

std::size_t count_foreground(const BinaryImage& mask) {
  return static_cast<std::size_t>(
      std::count(mask.pixels().begin(), mask.pixels().end(), 1));
}

GrayImage lift_mask(const BinaryImage& mask) {
  GrayImage out(mask.width(), mask.height());
  auto src = mask.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 255 : 0;
  return out;
}

BinaryImage lower_mask(const GrayImage& img) { return binarize(img, 127); }

RealImage to_real(const GrayImage& img) {
  RealImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  return out;
}

GrayImage to_gray(const RealImage& img) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = clamp_round(src[i]);
  return out;
}

}  // namespace cardvision
