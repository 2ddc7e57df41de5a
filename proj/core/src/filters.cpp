#include "cardvision/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cardvision {

Kernel::Kernel(int width, int height, std::vector<double> weights)
    : width_(width), height_(height), weights_(std::move(weights)) {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
    throw std::invalid_argument("kernel dimensions must be odd and positive");
  }
  if (weights_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("kernel weight count does not match size");
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) throw std::invalid_argument("non-finite kernel weight");
  }
}

Kernel Kernel::mean(int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("mean kernel size must be odd");
  return Kernel(n, n, std::vector<double>(n * n, 1.0 / (n * n)));
}

RealImage conv2_same(const RealImage& img, const Kernel& kernel) {
  const int w = img.width();
  const int h = img.height();
  const int kw = kernel.width();
  const int kh = kernel.height();
  const int cx = kw / 2;
  const int cy = kh / 2;

  RealImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      // out(x,y) = sum_k in(x - (i - cx), y - (j - cy)) * k(i,j)
      for (int j = 0; j < kh; ++j) {
        const int sy = y - (j - cy);
        if (sy < 0 || sy >= h) continue;
        const auto src = img.row(sy);
        for (int i = 0; i < kw; ++i) {
          const int sx = x - (i - cx);
          if (sx < 0 || sx >= w) continue;
          acc += src[sx] * kernel(i, j);
        }
      }
      out(x, y) = acc;
    }
  }
  return out;
}

Kernel gaussian_kernel(double sigma, int size) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("gaussian kernel size must be odd");
  }
  const int c = size / 2;
  std::vector<double> w(static_cast<std::size_t>(size) * size);
  double total = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x - c;
      const double dy = y - c;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      w[y * size + x] = v;
      total += v;
    }
  }
  for (double& v : w) v /= total;
  return Kernel(size, size, std::move(w));
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
  const int size = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
  const Kernel k = gaussian_kernel(sigma, size);
  const int c = size / 2;
  const int w = img.width();
  const int h = img.height();

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < size; ++j) {
        const int sy = std::clamp(y - (j - c), 0, h - 1);
        const auto src = img.row(sy);
        for (int i = 0; i < size; ++i) {
          const int sx = std::clamp(x - (i - c), 0, w - 1);
          acc += src[sx] * k(i, j);
        }
      }
      out(x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
    }
  }
  return out;
}

GrayImage median_filter(const GrayImage& img, int rows, int cols) {
  if (rows < 1 || cols < 1 || rows % 2 == 0 || cols % 2 == 0) {
    throw std::invalid_argument("median window must have odd dimensions");
  }
  const int w = img.width();
  const int h = img.height();
  const int ry = rows / 2;
  const int rx = cols / 2;
  const int n = rows * cols;

  GrayImage out(w, h);
  std::vector<std::uint8_t> window(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int k = 0;
      for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -rx; dx <= rx; ++dx) {
          const int sx = x + dx;
          const int sy = y + dy;
          window[k++] = img.contains(sx, sy) ? img(sx, sy) : 0;
        }
      }
      auto mid = window.begin() + n / 2;
      std::nth_element(window.begin(), mid, window.end());
      out(x, y) = *mid;
    }
  }
  return out;
}

GrayImage hist_equalize(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("hist_equalize: empty image");
  std::array<std::size_t, 256> hist{};
  for (auto v : img.pixels()) ++hist[v];

  std::array<std::uint8_t, 256> lut{};
  const double total = static_cast<double>(img.size());
  std::size_t running = 0;
  for (int v = 0; v < 256; ++v) {
    running += hist[v];
    lut[v] = static_cast<std::uint8_t>(std::lround(255.0 * (running / total)));
  }

  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

}  // namespace cardvision
