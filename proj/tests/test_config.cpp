#include <sstream>

#include "cardvision/config.hpp"
#include "cardvision/error.hpp"
#include "cardvision/eval.hpp"
#include "cardvision/pipeline.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cardvision;

TEST_SUITE("config") {

TEST_CASE("defaults") {
  const PipelineConfig cfg;
  CHECK(cfg.detector.edge.fudge_factor == 0.5);
  CHECK(!cfg.detector.min_area.has_value());
  CHECK(cfg.detector.rect_fill_ratio_min == 0.85);
  CHECK(cfg.detector.card_aspect_lo == 0.62);
  CHECK(cfg.detector.card_aspect_hi == 0.80);
  CHECK(cfg.detector.edge_strip_width == 20);
  CHECK(cfg.detector.tau_edge == 0.12);
  CHECK(cfg.semantics.corner_w_frac == 0.18);
  CHECK(cfg.semantics.corner_h_frac == 0.28);
  CHECK(cfg.semantics.min_confidence == 0.40);
  CHECK(cfg.semantics.conv_kernel == Kernel::mean(3));
}

TEST_CASE("set option") {
  PipelineConfig cfg;
  set_option(cfg, "detector.tau_edge", "0.2");
  set_option(cfg, "detector.min_area", "40");
  set_option(cfg, "semantics.conv_kernel", "identity");
  CHECK(cfg.detector.tau_edge == 0.2);
  CHECK(cfg.detector.min_area == 40);
  CHECK(cfg.semantics.conv_kernel == Kernel::identity());
  set_option(cfg, "semantics.conv_kernel", "3 1 0.25 0.5 0.25");
  CHECK(cfg.semantics.conv_kernel.width() == 3);
  CHECK(cfg.semantics.conv_kernel.height() == 1);

  CHECK_THROWS_AS(set_option(cfg, "detector.nope", "1"), Error);
  CHECK_THROWS_AS(set_option(cfg, "detector.tau_edge", "abc"), Error);
}

TEST_CASE("written config reads back to the same values") {
  PipelineConfig cfg;
  cfg.detector.min_area = 123;
  cfg.detector.tau_edge = 0.07;
  cfg.semantics.conv_kernel = Kernel::mean(5);
  cfg.semantics.match_margin = 4;
  std::stringstream ss;
  write_config(ss, cfg);

  PipelineConfig back;
  apply_config(back, ss);
  std::stringstream again;
  write_config(again, back);
  CHECK(again.str() == ss.str());
  CHECK(back.detector.min_area == 123);
  CHECK(back.semantics.conv_kernel == Kernel::mean(5));
}

TEST_CASE("config text with comments keeps unspecified values") {
  PipelineConfig cfg;
  std::istringstream in("# tweak\n\ndetector.fudge = 0.7  # scene edges\n");
  apply_config(cfg, in);
  CHECK(cfg.detector.edge.fudge_factor == 0.7);
  CHECK(cfg.semantics.edge.fudge_factor == 0.5);

  std::istringstream bad("detector.fudge 0.7\n");
  CHECK_THROWS_AS(apply_config(cfg, bad), Error);
}

TEST_CASE("report line layout") {
  const SceneRender r = render_scene(single_card_scene(Rank::Jack, Suit::Diamond, 0));
  const auto d = analyze_scene(r.image, testing_support::templates(), {}, {});
  std::ostringstream out;
  write_report(out, d);
  const std::string line = out.str();
  CHECK(line.rfind("index=0 class=CARD bbox=", 0) == 0);
  CHECK(line.find(" rank=J suit=diamond rank_score=") != std::string::npos);
  CHECK(line.back() == '\n');

  std::ostringstream empty;
  write_report(empty, {});
  CHECK(empty.str().empty());
}

TEST_CASE("scene scoring") {
  std::vector<TruthObject> truth(2);
  truth[0] = {0, ObjectKind::Card, 0, Box{10, 10, 50, 70}, {}, Rank::Ace, Suit::Club};
  truth[1] = {1, ObjectKind::Disk, 1, Box{100, 100, 40, 40}, {}, {}, {}};
  std::vector<Detection> dets(3);
  dets[0].shape = ShapeClass::Card;
  dets[0].props.bbox = {11, 10, 50, 70};
  dets[1].shape = ShapeClass::Card;  // a disk called a card
  dets[1].props.bbox = {100, 101, 40, 40};
  dets[2].shape = ShapeClass::Card;  // matches nothing
  dets[2].props.bbox = {300, 300, 20, 20};
  const SceneScore s = score_scene("t", truth, dets);
  CHECK(s.true_cards == 1);
  CHECK(s.detected_cards == 3);
  CHECK(s.groups == 2);
  CHECK(s.groups_correct == 1);
  CHECK(s.disks_as_card == 1);
  CHECK(s.false_greens == 2);
  CHECK(box_iou(Box{0, 0, 10, 10}, Box{5, 0, 10, 10}) == doctest::Approx(50.0 / 150.0));
}

}  // TEST_SUITE
