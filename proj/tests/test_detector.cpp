#include <set>

#include "cardvision/detector.hpp"
#include "cardvision/synth.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cardvision;
using testing_support::deck;
using testing_support::templates;

namespace {

int count_class(const std::vector<Detection>& d, ShapeClass c) {
  int n = 0;
  for (const Detection& x : d) n += x.shape == c;
  return n;
}

bool box_within(const Box& inner, const Box& outer) {
  return inner.x >= outer.x && inner.y >= outer.y &&
         inner.x + inner.width <= outer.x + outer.width &&
         inner.y + inner.height <= outer.y + outer.height;
}

SceneRender render(std::vector<SceneObject> objects) {
  SceneSpec spec;
  spec.objects = std::move(objects);
  return render_scene(spec);
}

ShapeVerdict verdict_of(const RgbImage& scene, std::size_t index = 0) {
  const DetectorConfig cfg;
  const Segmentation seg = segment_scene(scene, cfg);
  REQUIRE(seg.props.size() > index);
  const RegionProps& p = seg.props[index];
  return classify_shape(p, component_mask(seg.labels, p.label), cfg);
}

}  // namespace

TEST_SUITE("detector") {

TEST_CASE("blank table has no components") {
  const SceneRender r = render({});
  CHECK(segment_scene(r.image, {}).props.empty());
  CHECK(detect(r.image, templates(), {}).empty());
}

TEST_CASE("one card gives one component covering it") {
  const SceneRender r = render({make_card(Rank::Four, Suit::Club, {300, 220, 20, 1.0})});
  const Segmentation seg = segment_scene(r.image, {});
  REQUIRE(seg.props.size() == 1);
  CHECK(box_within(r.truth[0].bbox, seg.props[0].bbox));
  CHECK(seg.boundaries.size() == seg.props.size());
}

TEST_CASE("specks fall below the area floor") {
  SceneRender r = render({make_card(Rank::Four, Suit::Club, {300, 220, 0, 1.0})});
  for (const Point p : {Point{50, 50}, {51, 50}, {50, 51}, {51, 51}, {52, 50}})
    r.image(p.x, p.y) = {255, 255, 255};
  const Segmentation seg = segment_scene(r.image, {});
  CHECK(seg.props.size() == 1);
  for (const RegionProps& p : seg.props) CHECK(p.area >= 300);
}

TEST_CASE("min area scales with the scene") {
  DetectorConfig cfg;
  CHECK(cfg.min_area_for(640, 480) == 300);
  CHECK(cfg.min_area_for(320, 240) == 75);
  cfg.min_area = 12;
  CHECK(cfg.min_area_for(640, 480) == 12);
}

TEST_CASE("shape classes") {
  const ShapeVerdict rect = verdict_of(render({make_rect({320, 240, 0, 1.0})}).image);
  CHECK(rect.shape == ShapeClass::Rect);
  CHECK(rect.fill_ratio > 0.95);

  const ShapeVerdict disk = verdict_of(render({make_disk({320, 240, 0, 1.0})}).image);
  CHECK(disk.shape == ShapeClass::Other);
  CHECK(disk.fill_ratio == doctest::Approx(0.785).epsilon(0.04));

  const ShapeVerdict tilted = verdict_of(render({make_rect({320, 240, 30, 1.0})}).image);
  CHECK(tilted.shape == ShapeClass::Rect);
}

TEST_CASE("edge verification") {
  const DetectorConfig cfg;
  // The cards the strips were averaged from.
  double worst = 0;
  for (const LabeledCard& c : deck()) {
    const EdgeVerdict v = verify_card(c.image, templates(), cfg);
    CHECK(v.is_card);
    worst = std::max(worst, v.edge_score);
  }
  CHECK(worst < 0.03);

  const EdgeVerdict square = verify_card(GrayImage(100, 100, 255), templates(), cfg);
  CHECK(!square.is_card);
  CHECK(square.edge_score == 1.0);

  // +15 on every pixel moves the score by at most 15/255.
  GrayImage bright = deck()[5].image;
  for (auto& v : bright.pixels()) v = static_cast<std::uint8_t>(std::min(255, v + 15));
  const EdgeVerdict b = verify_card(bright, templates(), cfg);
  CHECK(b.is_card);
  CHECK(b.edge_score <= verify_card(deck()[5].image, templates(), cfg).edge_score + 15.0 / 255 + 1e-9);
}

TEST_CASE("three cards, a disk and a box") {
  const SceneRender r = render_scene(detection_suite()[0]);
  const auto d = detect(r.image, templates(), {});
  CHECK(d.size() == 5);
  CHECK(count_class(d, ShapeClass::Card) == 3);
  CHECK(count_class(d, ShapeClass::Rect) == 1);
  CHECK(count_class(d, ShapeClass::Other) == 1);
  for (const Detection& x : d) {
    if (x.shape != ShapeClass::Card) continue;
    CHECK(x.upright_crop.has_value());
    REQUIRE(x.edge_score.has_value());
    CHECK(*x.edge_score <= DetectorConfig{}.tau_edge);
  }
}

TEST_CASE("overlapping cards are not two cards") {
  const SceneRender r = render({make_card(Rank::Five, Suit::Diamond, {280, 240, 0, 0.8}),
                                make_card(Rank::Nine, Suit::Spade, {350, 270, 30, 0.8})});
  const auto d = detect(r.image, templates(), {});
  CHECK(count_class(d, ShapeClass::Card) < 2);
}

TEST_CASE("annotation paints boundaries only") {
  const SceneRender r = render_scene(detection_suite()[0]);
  CHECK(annotate(r.image, {}) == r.image);

  const auto d = detect(r.image, templates(), {});
  const RgbImage out = annotate(r.image, d);
  for (const Detection& x : d) {
    const Rgb want = annotation_color(x.shape);
    for (const Point& p : x.boundary) CHECK(out(p.x, p.y) == want);
  }
  std::set<std::pair<int, int>> painted;
  for (const Detection& x : d)
    for (const Point& p : x.boundary) painted.emplace(p.x, p.y);
  std::size_t changed = 0;
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      if (!(out(x, y) == r.image(x, y))) {
        ++changed;
        CHECK(painted.count({x, y}) == 1);
      }
  CHECK(changed <= painted.size());
  CHECK(annotation_color(ShapeClass::Card) == Rgb{0, 255, 0});
  CHECK(annotation_color(ShapeClass::Rect) == Rgb{0, 0, 255});
  CHECK(annotation_color(ShapeClass::Other) == Rgb{255, 0, 0});
}

TEST_CASE("one card annotates exactly its boundary") {
  const SceneRender r = render({make_card(Rank::Two, Suit::Heart, {320, 240, 0, 1.0})});
  const auto d = detect(r.image, templates(), {});
  REQUIRE(d.size() == 1);
  CHECK(d[0].shape == ShapeClass::Card);
  const RgbImage out = annotate(r.image, d);
  std::set<std::pair<int, int>> unique;
  for (const Point& p : d[0].boundary) unique.emplace(p.x, p.y);
  std::size_t green = 0;
  for (const Rgb& c : out.pixels()) green += c == Rgb{0, 255, 0};
  CHECK(green == unique.size());
}

TEST_CASE("detection is deterministic") {
  const SceneRender r = render_scene(detection_suite()[2]);
  const auto a = detect(r.image, templates(), {});
  const auto b = detect(r.image, templates(), {});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].shape == b[i].shape);
    CHECK(a[i].boundary == b[i].boundary);
    CHECK(a[i].edge_score == b[i].edge_score);
    CHECK(a[i].upright_crop == b[i].upright_crop);
  }
  CHECK(annotate(r.image, a) == annotate(r.image, b));
}

TEST_CASE("class monotonicity in the thresholds") {
  for (const SceneSpec& spec : detection_suite()) {
    const SceneRender r = render_scene(spec);
    DetectorConfig base;
    const auto d0 = detect(r.image, templates(), base);

    DetectorConfig loose_tau = base;
    loose_tau.tau_edge = 0.3;
    const auto d1 = detect(r.image, templates(), loose_tau);
    REQUIRE(d1.size() == d0.size());
    for (std::size_t i = 0; i < d0.size(); ++i)
      if (d0[i].shape == ShapeClass::Card) CHECK(d1[i].shape == ShapeClass::Card);

    DetectorConfig loose_fill = base;
    loose_fill.rect_fill_ratio_min = 0.7;
    const auto d2 = detect(r.image, templates(), loose_fill);
    REQUIRE(d2.size() == d0.size());
    for (std::size_t i = 0; i < d0.size(); ++i)
      if (d0[i].shape != ShapeClass::Other) CHECK(d2[i].shape != ShapeClass::Other);
  }
}

TEST_CASE("cards are found at any angle") {
  for (int angle = 0; angle <= 75; angle += 15) {
    const SceneRender r = render_scene(single_card_scene(Rank::Six, Suit::Spade, angle));
    const auto d = detect(r.image, templates(), {});
    CAPTURE(angle);
    REQUIRE(d.size() == 1);
    CHECK(d[0].shape == ShapeClass::Card);
  }
}

TEST_CASE("cards are found down to half scale") {
  for (double s : {1.0, 0.9, 0.8, 0.7, 0.6, 0.5}) {
    const SceneRender r = render_scene(single_card_scene(Rank::Queen, Suit::Heart, 20, s));
    const auto d = detect(r.image, templates(), {});
    CAPTURE(s);
    REQUIRE(d.size() == 1);
    CHECK(d[0].shape == ShapeClass::Card);
  }
}

TEST_CASE("config validation") {
  DetectorConfig bad;
  bad.card_aspect_lo = 0.9;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.tau_edge = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.canonical_width = 10;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
