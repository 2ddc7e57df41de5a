#include "cardvision/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace cardvision {
namespace {

// Summed-area table with a zero first row/column: sum over
// [x0, x1) x [y0, y1) is t(x1,y1) - t(x0,y1) - t(x1,y0) + t(x0,y0).
class IntegralTable {
 public:
  IntegralTable(const RealImage& img, bool squared)
      : w_(img.width() + 1), table_(static_cast<std::size_t>(w_) * (img.height() + 1)) {
    for (int y = 0; y < img.height(); ++y) {
      double row = 0.0;
      for (int x = 0; x < img.width(); ++x) {
        const double v = img(x, y);
        row += squared ? v * v : v;
        at(x + 1, y + 1) = at(x + 1, y) + row;
      }
    }
  }

  double sum(int x0, int y0, int x1, int y1) const {
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
  }

 private:
  double& at(int x, int y) { return table_[static_cast<std::size_t>(y) * w_ + x]; }
  double at(int x, int y) const { return table_[static_cast<std::size_t>(y) * w_ + x]; }

  int w_;
  std::vector<double> table_;
};

}  // namespace

CorrSurface normxcorr(const RealImage& templ, const RealImage& image) {
  const int tw = templ.width();
  const int th = templ.height();
  const int iw = image.width();
  const int ih = image.height();
  if (tw < 1 || th < 1) throw std::invalid_argument("normxcorr: empty template");
  if (tw >= iw || th >= ih) {
    throw std::invalid_argument(
        "normxcorr: template must be smaller than the image in both dimensions");
  }

  const double n = static_cast<double>(tw) * th;
  double tmean = 0.0;
  for (double v : templ.pixels()) tmean += v;
  tmean /= n;
  RealImage tz(tw, th);
  double tss = 0.0;
  double tmax = 0.0;
  for (int y = 0; y < th; ++y) {
    for (int x = 0; x < tw; ++x) {
      const double d = templ(x, y) - tmean;
      tz(x, y) = d;
      tss += d * d;
      tmax = std::max(tmax, std::abs(templ(x, y)));
    }
  }
  if (tss <= 1e-12 * std::max(1.0, tmax * tmax * n)) {
    throw std::invalid_argument("normxcorr: template is constant");
  }

  const IntegralTable sum(image, false);
  const IntegralTable sum_sq(image, true);

  CorrSurface out(iw + tw - 1, ih + th - 1);
  for (int v = 0; v < out.height(); ++v) {
    const int top = v - th + 1;  // template row 0 sits on image row `top`
    const int y0 = std::max(top, 0);
    const int y1 = std::min(v + 1, ih);
    for (int u = 0; u < out.width(); ++u) {
      const int left = u - tw + 1;
      const int x0 = std::max(left, 0);
      const int x1 = std::min(u + 1, iw);

      const double s = sum.sum(x0, y0, x1, y1);
      const double s2 = sum_sq.sum(x0, y0, x1, y1);
      // n * sum((f - mean)^2), with the zero padding inside the window.
      const double fvar_n = n * s2 - s * s;
      if (fvar_n <= 1e-12 * n * s2) {
        out(u, v) = 0.0;
        continue;
      }

      // sum(f * (t - tmean)) equals sum((f - fmean)(t - tmean)).
      double num = 0.0;
      for (int y = y0; y < y1; ++y) {
        const auto irow = image.row(y);
        const auto trow = tz.row(y - top);
        for (int x = x0; x < x1; ++x) num += irow[x] * trow[x - left];
      }
      const double gamma = num / std::sqrt(fvar_n / n * tss);
      out(u, v) = std::clamp(gamma, -1.0, 1.0);
    }
  }
  return out;
}

Peak best_match(const CorrSurface& surface) {
  if (surface.empty()) throw std::invalid_argument("best_match: empty surface");
  Peak best{surface(0, 0), {0, 0}};
  for (int y = 0; y < surface.height(); ++y) {
    for (int x = 0; x < surface.width(); ++x) {
      if (surface(x, y) > best.value) best = {surface(x, y), {x, y}};
    }
  }
  return best;
}

double subtractive_score(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("subtractive_score: dimension mismatch");
  }
  if (a.empty()) return 0.0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    total += static_cast<std::uint64_t>(std::abs(int(pa[i]) - int(pb[i])));
  }
  return static_cast<double>(total) / (255.0 * static_cast<double>(pa.size()));
}

}  // namespace cardvision
