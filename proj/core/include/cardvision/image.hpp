#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace cardvision {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

struct PointF {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned pixel rectangle; x,y is the top-left pixel.
struct Box {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool empty() const { return width <= 0 || height <= 0; }
  bool contains(int px, int py) const {
    return px >= x && py >= y && px < x + width && py < y + height;
  }
  bool operator==(const Box&) const = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

// Row-major pixel grid. Image<bool> stores one byte per pixel (0 or 1) so
// that rows can be handed out as spans.
template <typename T>
class Image {
 public:
  using value_type = T;
  using storage_type =
      std::conditional_t<std::is_same_v<T, bool>, std::uint8_t, T>;

  Image() = default;

  Image(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw std::invalid_argument("image dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(width) * height,
                 static_cast<storage_type>(fill));
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  storage_type& operator()(int x, int y) {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  const storage_type& operator()(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<storage_type> pixels() noexcept { return data_; }
  std::span<const storage_type> pixels() const noexcept { return data_; }

  std::span<storage_type> row(int y) {
    return std::span<storage_type>(data_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }
  std::span<const storage_type> row(int y) const {
    return std::span<const storage_type>(data_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<storage_type> data_;
};

using GrayImage = Image<std::uint8_t>;
using BinaryImage = Image<bool>;
using RgbImage = Image<Rgb>;
using RealImage = Image<double>;

GrayImage to_grayscale(const RgbImage& img);

// Foreground iff intensity > level.
BinaryImage binarize(const GrayImage& img, int level);

// Otsu's between-class-variance threshold over the 256-bin histogram. The
// returned level splits background (<= level) from foreground (> level);
// ties go to the lower level.
int otsu_level(const GrayImage& img);

// Bilinear resampling with pixel-center alignment.
GrayImage resize(const GrayImage& img, int new_width, int new_height);

// Counter-clockwise rotation (as displayed, y pointing down) about the image
// center. The canvas grows to hold the whole rotated input; samples that fall
// outside the source take `fill`. Multiples of 90 degrees are exact.
GrayImage rotate(const GrayImage& img, double angle_deg, std::uint8_t fill);

// Exact counter-clockwise rotation by quarter turns.
template <typename T>
Image<T> rotate_quarter(const Image<T>& img, int quarter_turns) {
  const int k = ((quarter_turns % 4) + 4) % 4;
  const int w = img.width();
  const int h = img.height();
  if (k == 0) return img;
  if (k == 2) {
    Image<T> out(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out(x, y) = img(w - 1 - x, h - 1 - y);
    return out;
  }
  Image<T> out(h, w);
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < h; ++x) {
      out(x, y) = (k == 1) ? img(w - 1 - y, x) : img(y, h - 1 - x);
    }
  }
  return out;
}

template <typename T>
Image<T> crop(const Image<T>& img, const Box& box) {
  if (box.width < 0 || box.height < 0 || box.x < 0 || box.y < 0 ||
      box.x + box.width > img.width() || box.y + box.height > img.height()) {
    throw std::invalid_argument("crop box outside image");
  }
  Image<T> out(box.width, box.height);
  for (int y = 0; y < box.height; ++y)
    for (int x = 0; x < box.width; ++x) out(x, y) = img(box.x + x, box.y + y);
  return out;
}

// Surround with a constant margin on every side.
template <typename T>
Image<T> pad(const Image<T>& img, int margin, T fill = T{}) {
  Image<T> out(img.width() + 2 * margin, img.height() + 2 * margin, fill);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out(x + margin, y + margin) = img(x, y);
  return out;
}

// Tight bounding box of the foreground; empty Box when there is none.
Box tight_box(const BinaryImage& mask);

std::size_t count_foreground(const BinaryImage& mask);

// Masks as {0,255} intensities and back (foreground iff >= 128).
GrayImage lift_mask(const BinaryImage& mask);
BinaryImage lower_mask(const GrayImage& img);

RealImage to_real(const GrayImage& img);

// Round and clamp to [0,255].
GrayImage to_gray(const RealImage& img);

}  // namespace cardvision
