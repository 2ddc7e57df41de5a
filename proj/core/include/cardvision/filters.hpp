#pragma once

#include <vector>

#include "cardvision/image.hpp"

namespace cardvision {

// Odd-sized real-valued kernel, row-major.
class Kernel {
 public:
  Kernel(int width, int height, std::vector<double> weights);

  static Kernel identity() { return Kernel(1, 1, {1.0}); }
  // n x n box filter with weights 1/n^2.
  static Kernel mean(int n);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double operator()(int x, int y) const { return weights_[y * width_ + x]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  bool operator==(const Kernel&) const = default;

 private:
  int width_;
  int height_;
  std::vector<double> weights_;
};

// Same-size true 2-D convolution (kernel flipped), zero outside the image.
RealImage conv2_same(const RealImage& img, const Kernel& kernel);

// Normalized Gaussian on a centered size x size grid.
Kernel gaussian_kernel(double sigma, int size);

// Gaussian smoothing with support 2*ceil(3*sigma)+1 and edge replication.
GrayImage gaussian_blur(const GrayImage& img, double sigma = 1.0);

// Median over a window of `rows` x `cols` (both odd), zero outside the image.
GrayImage median_filter(const GrayImage& img, int rows, int cols);

// Maps v to round(255 * cdf(v)).
GrayImage hist_equalize(const GrayImage& img);

}  // namespace cardvision
