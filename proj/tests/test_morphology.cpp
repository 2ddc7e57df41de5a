#include <random>
#include <set>

#include "cardvision/morphology.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cardvision;

namespace {

BinaryImage from_rows(std::initializer_list<const char*> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(std::string(*rows.begin()).size());
  BinaryImage m(w, h);
  int y = 0;
  for (const char* r : rows) {
    for (int x = 0; x < w; ++x) m(x, y) = r[x] == '#';
    ++y;
  }
  return m;
}

bool subset(const BinaryImage& a, const BinaryImage& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.pixels()[i] && !b.pixels()[i]) return false;
  return true;
}

// Dilation straight from the definition.
BinaryImage naive_dilate(const BinaryImage& img, const StructuringElement& se) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int j = 0; j < se.mask().height(); ++j)
        for (int i = 0; i < se.mask().width(); ++i) {
          if (!se.mask()(i, j)) continue;
          const int sx = x + i - se.origin().x, sy = y + j - se.origin().y;
          if (img.contains(sx, sy) && img(sx, sy)) out(x, y) = true;
        }
  return out;
}

}  // namespace

TEST_SUITE("morphology") {

TEST_CASE("sobel on constant, step and huge fudge") {
  CHECK(count_foreground(sobel_edges(GrayImage(12, 9, 100))) == 0);

  GrayImage step(12, 9, 0);
  for (int y = 0; y < 9; ++y)
    for (int x = 6; x < 12; ++x) step(x, y) = 255;
  const BinaryImage e = sobel_edges(step);
  for (int y = 1; y < 8; ++y)
    for (int x = 0; x < 12; ++x) CHECK(bool(e(x, y)) == (x == 5 || x == 6));
  for (int x = 0; x < 12; ++x) CHECK(!e(x, 0));  // border ring

  CHECK(count_foreground(sobel_edges(step, EdgeConfig{1e6})) == 0);
  CHECK_THROWS_AS(sobel_edges(GrayImage(2, 5, 0)), std::invalid_argument);
}

TEST_CASE("dilate") {
  CHECK(count_foreground(dilate(BinaryImage(5, 5), StructuringElement::square(3))) == 0);

  BinaryImage dot(5, 5);
  dot(2, 2) = true;
  const BinaryImage d = dilate(dot, StructuringElement::square(3));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) CHECK(bool(d(x, y)) == (std::abs(x - 2) <= 1 && std::abs(y - 2) <= 1));

  std::mt19937_64 rng(9);
  const BinaryImage r = oracle::random_mask(rng, 11, 8, 0.2);
  CHECK(dilate(r, StructuringElement::square(1)) == r);
}

TEST_CASE("dilate matches the definition for asymmetric elements") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    BinaryImage sm = oracle::random_mask(rng, 3, 4, 0.5);
    sm(1, 2) = true;
    const StructuringElement se(sm, {1, 2});
    const BinaryImage img = oracle::random_mask(rng, 14, 10, 0.15);
    const BinaryImage got = dilate(img, se);
    CHECK(got == naive_dilate(img, se));
    CHECK(subset(img, got));  // extensive: origin cell is set
    BinaryImage more = img;
    more(trial % 14, trial % 10) = true;
    CHECK(subset(got, dilate(more, se)));  // monotone
  }
}

TEST_CASE("close") {
  const auto sq = StructuringElement::square(3);
  BinaryImage rect(10, 8);
  for (int y = 2; y < 6; ++y)
    for (int x = 2; x < 8; ++x) rect(x, y) = true;
  CHECK(close(rect, sq) == rect);

  BinaryImage holed = rect;
  holed(4, 3) = false;
  CHECK(close(holed, sq) == rect);
  CHECK(count_foreground(close(BinaryImage(6, 6), sq)) == 0);
}

TEST_CASE("close is idempotent and extensive on random masks") {
  std::mt19937_64 rng(12);
  for (int size : {3, 5}) {
    const auto se = StructuringElement::square(size);
    for (int trial = 0; trial < 25; ++trial) {
      const BinaryImage img = oracle::random_mask(rng, 20, 16, 0.3);
      const BinaryImage once = close(img, se);
      CHECK(subset(img, once));
      CHECK(close(once, se) == once);
    }
  }
}

TEST_CASE("fill holes") {
  const BinaryImage outline = from_rows({
      "......",
      ".####.",
      ".#..#.",
      ".#..#.",
      ".####.",
      "......",
  });
  const BinaryImage filled = from_rows({
      "......",
      ".####.",
      ".####.",
      ".####.",
      ".####.",
      "......",
  });
  CHECK(fill_holes(outline) == filled);
  CHECK(fill_holes(filled) == filled);

  const BinaryImage c_shape = from_rows({
      "#####",
      "#....",
      "#.###",
      "#...#",
      "#####",
  });
  CHECK(fill_holes(c_shape) == c_shape);

  // Background touching only diagonally is still a hole under 4-connectivity.
  const BinaryImage diag = from_rows({
      "###.",
      "#.##",
      "###.",
  });
  CHECK(fill_holes(diag)(1, 1));
}

TEST_CASE("fill holes is idempotent and extensive") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage img = oracle::random_mask(rng, 15, 12, 0.55);
    const BinaryImage once = fill_holes(img);
    CHECK(subset(img, once));
    CHECK(fill_holes(once) == once);
  }
}

TEST_CASE("area open") {
  BinaryImage img(20, 10);
  for (int i = 0; i < 5; ++i) img(i, 0) = true;      // area 5
  for (int y = 3; y < 8; ++y)
    for (int x = 8; x < 18; ++x) img(x, y) = true;    // area 50
  CHECK(area_open(img, 0) == img);
  const BinaryImage out = area_open(img, 10);
  CHECK(count_foreground(out) == 50);
  CHECK(!out(0, 0));
  CHECK(count_foreground(area_open(img, 5)) == 55);  // exactly min_area is kept
}

TEST_CASE("area open keeps exactly the large components") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage img = oracle::random_mask(rng, 24, 18, 0.25);
    const int min_area = trial % 7;
    std::vector<int> expect;
    for (int s : oracle::component_sizes(img))
      if (s >= min_area) expect.push_back(s);
    const BinaryImage out = area_open(img, min_area);
    CHECK(oracle::component_sizes(out) == expect);
    CHECK(subset(out, img));
  }
}

TEST_CASE("label components") {
  CHECK(label_components(BinaryImage(4, 4)).count == 0);
  BinaryImage diag(3, 3);
  diag(0, 0) = diag(1, 1) = true;
  CHECK(label_components(diag, Connectivity::Eight).count == 1);
  CHECK(label_components(diag, Connectivity::Four).count == 2);

  const BinaryImage two = from_rows({
      "..#",
      "#..",
      "#..",
  });
  const LabelMap lm = label_components(two);
  CHECK(lm.labels(2, 0) == 1);  // raster order of first pixel
  CHECK(lm.labels(0, 1) == 2);
}

TEST_CASE("label counts agree with a flood-fill census") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryImage img = oracle::random_mask(rng, 20, 20, 0.35);
    const LabelMap l8 = label_components(img, Connectivity::Eight);
    const LabelMap l4 = label_components(img, Connectivity::Four);
    CHECK(l8.count == static_cast<int>(oracle::component_sizes(img).size()));
    CHECK(l8.count <= l4.count);
    // Transposing changes raster order but not the number of components.
    BinaryImage t(img.height(), img.width());
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) t(y, x) = img(x, y);
    CHECK(label_components(t).count == l8.count);
  }
}

TEST_CASE("boundary tracing") {
  BinaryImage one(3, 3);
  one(1, 1) = true;
  auto b = trace_boundaries(one);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == Boundary{{1, 1}});

  BinaryImage block(4, 4);
  block(1, 1) = block(2, 1) = block(1, 2) = block(2, 2) = true;
  b = trace_boundaries(block);
  REQUIRE(b.size() == 1);
  // Clockwise on screen from the raster-first pixel.
  CHECK(b[0] == Boundary{{1, 1}, {2, 1}, {2, 2}, {1, 2}});

  // Holes are not traced: one outline for a ring.
  BinaryImage ring(5, 5, true);
  ring(2, 2) = false;
  CHECK(trace_boundaries(ring).size() == 1);
}

TEST_CASE("traced pixels are the outer boundary pixels") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const BinaryImage img = fill_holes(oracle::random_mask(rng, 16, 14, 0.45));
    std::set<std::pair<int, int>> traced;
    for (const Boundary& bd : trace_boundaries(img))
      for (const Point& p : bd) traced.emplace(p.x, p.y);
    CAPTURE(trial);
    CHECK(traced == oracle::boundary_pixels(img));
  }
}

TEST_CASE("clear border") {
  const BinaryImage img = from_rows({
      "#.....",
      "......",
      "..##..",
      "......",
      ".....#",
  });
  const BinaryImage all = clear_border(img);
  CHECK(count_foreground(all) == 2);
  const BinaryImage top_left = clear_border(img, BorderSides{true, false, true, false});
  CHECK(count_foreground(top_left) == 3);
  CHECK(top_left(5, 4));
}

}  // TEST_SUITE
