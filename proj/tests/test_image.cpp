#include <random>

#include "cardvision/error.hpp"
#include "cardvision/image.hpp"
#include "cardvision/pnm.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <sstream>

using namespace cardvision;

TEST_SUITE("image") {

TEST_CASE("grayscale of pure colours") {
  RgbImage img(3, 1);
  img(0, 0) = {0, 0, 0};
  img(1, 0) = {255, 255, 255};
  img(2, 0) = {255, 0, 0};
  const GrayImage g = to_grayscale(img);
  CHECK(g(0, 0) == 0);
  CHECK(g(1, 0) == 255);
  CHECK(g(2, 0) == 76);  // round(0.299 * 255) = round(76.245)
}

TEST_CASE("binarize is strict and monotone in level") {
  CHECK(count_foreground(binarize(GrayImage(4, 4, 0), 0)) == 0);
  CHECK(count_foreground(binarize(GrayImage(4, 4, 255), 0)) == 16);

  GrayImage checker(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) checker(x, y) = (x + y) % 2 ? 200 : 10;
  const BinaryImage b = binarize(checker, 128);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) CHECK(bool(b(x, y)) == ((x + y) % 2 == 1));

  std::mt19937_64 rng(11);
  const GrayImage img = oracle::random_gray(rng, 20, 20);
  std::size_t prev = img.size() + 1;
  for (int level = 0; level < 256; ++level) {
    const BinaryImage m = binarize(img, level);
    const std::size_t n = count_foreground(m);
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("otsu on fixed inputs") {
  CHECK(otsu_level(GrayImage(5, 5, 77)) == 0);

  GrayImage bimodal(10, 2);
  for (int x = 0; x < 10; ++x) bimodal(x, 0) = 20, bimodal(x, 1) = 220;
  const int level = otsu_level(bimodal);
  CHECK(level >= 20);
  CHECK(level < 220);

  GrayImage two(2, 1);
  two(0, 0) = 0;
  two(1, 0) = 255;
  const BinaryImage m = binarize(two, otsu_level(two));
  CHECK(!m(0, 0));
  CHECK(m(1, 0));
}

TEST_CASE("otsu matches an exhaustive scan on random histograms") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    // Sparse histograms exercise ties and empty bins.
    std::uniform_int_distribution<int> nvals(1, 12), val(0, 255), cnt(1, 40);
    std::array<long, 256> hist{};
    const int k = nvals(rng);
    for (int i = 0; i < k; ++i) hist[val(rng)] += cnt(rng);
    std::vector<std::uint8_t> px;
    for (int v = 0; v < 256; ++v) px.insert(px.end(), hist[v], static_cast<std::uint8_t>(v));
    GrayImage img(static_cast<int>(px.size()), 1);
    std::copy(px.begin(), px.end(), img.pixels().begin());

    const auto var = oracle::between_class_variance(hist);
    const double best = *std::max_element(var.begin(), var.end());
    const int got = otsu_level(img);
    CAPTURE(trial);
    CHECK(var[got] >= best * (1 - 1e-12));
    for (int t = 0; t < got; ++t) CHECK(var[t] < best * (1 - 1e-12));
  }
}

TEST_CASE("resize") {
  std::mt19937_64 rng(5);
  const GrayImage img = oracle::random_gray(rng, 13, 9);
  CHECK(resize(img, 13, 9) == img);
  CHECK(resize(GrayImage(7, 5, 42), 19, 3) == GrayImage(19, 3, 42));

  GrayImage two(2, 1);
  two(0, 0) = 0;
  two(1, 0) = 255;
  const GrayImage three = resize(two, 3, 1);
  CHECK(three.width() == 3);
  CHECK(std::abs(int(three(1, 0)) - 128) <= 1);
}

TEST_CASE("rotate") {
  std::mt19937_64 rng(6);
  const GrayImage img = oracle::random_gray(rng, 7, 4);
  CHECK(rotate(img, 0, 0) == img);

  // Counter-clockwise as displayed: the top-right corner moves to top-left.
  const GrayImage r = rotate(img, 90, 0);
  REQUIRE(r.width() == 4);
  REQUIRE(r.height() == 7);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 4; ++x) CHECK(r(x, y) == img(6 - y, x));
  CHECK(r == rotate_quarter(img, 1));
  CHECK(rotate(r, -90, 0) == img);

  const GrayImage flat = rotate(GrayImage(30, 20, 90), 33, 0);
  const int cx = flat.width() / 2, cy = flat.height() / 2;
  for (int dy = -5; dy <= 5; ++dy)
    for (int dx = -5; dx <= 5; ++dx) CHECK(flat(cx + dx, cy + dy) == 90);
}

TEST_CASE("rotation grows the canvas to hold the corners") {
  const GrayImage r = rotate(GrayImage(100, 50, 200), 45, 0);
  // |w cos| + |w sin| etc., rounded up.
  CHECK(r.width() >= 106);
  CHECK(r.height() >= 106);
}

TEST_CASE("pnm round trip") {
  std::mt19937_64 rng(8);
  const GrayImage g = oracle::random_gray(rng, 9, 5);
  std::stringstream ss;
  write_pgm(ss, g);
  CHECK(read_pgm(ss) == g);

  RgbImage c(3, 2);
  c(2, 1) = {1, 2, 3};
  std::stringstream cs;
  write_ppm(cs, c);
  CHECK(read_ppm(cs) == c);

  std::stringstream bad("P5\n3 2\n65535\n");
  CHECK_THROWS_AS(read_pgm(bad), Error);
}

}  // TEST_SUITE
