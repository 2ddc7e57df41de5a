#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cardvision/card.hpp"
#include "cardvision/detector.hpp"
#include "cardvision/image.hpp"

namespace cardvision {

// Brightness is a relative gain (0.2 = 20% brighter); noise is additive
// Gaussian with the given standard deviation, drawn from `seed`.
struct Photometric {
  double brightness = 0.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  bool is_identity() const { return brightness == 0.0 && noise_sigma == 0.0; }
};

// Card of round(140*scale) x round(200*scale): rank glyph over suit glyph in
// the top-left index (and the same index rotated 180 degrees bottom-right), a
// thin black frame inset around the face, and a large pip in the middle. The
// paper is brightest under the two indices and darkens smoothly away from
// them. Glyphs come from a built-in 5x7 dot-matrix font and analytic suit
// shapes, supersampled 4x4 per pixel.
GrayImage render_card(Rank rank, Suit suit, double scale = 1.0);

// Deterministic for a given Photometric (same seed, same bytes).
GrayImage apply_jitter(const GrayImage& img, const Photometric& jitter);
RgbImage apply_jitter(const RgbImage& img, const Photometric& jitter);

// All 52 cards, suits in spade/heart/club/diamond order, ranks A..K within.
std::vector<LabeledCard> render_deck(double scale = 1.0);

enum class ObjectKind { Card, Rect, Disk };

std::string to_string(ObjectKind kind);
std::optional<ObjectKind> parse_object_kind(const std::string& text);
// Card -> CARD, Rect -> RECT, Disk -> OTHER.
ShapeClass expected_class(ObjectKind kind);

struct Pose {
  double cx = 0.0;
  double cy = 0.0;
  double angle_deg = 0.0;  // counter-clockwise as displayed
  double scale = 1.0;      // in (0, 1.5]
};

struct SceneObject {
  ObjectKind kind = ObjectKind::Card;
  Pose pose;
  Rank rank = Rank::Ace;  // cards only
  Suit suit = Suit::Spade;
  // Rect: base width/height; disk: base radius in `width`. Scaled by pose.
  int width = 0;
  int height = 0;
  Rgb color{};
};

SceneObject make_card(Rank rank, Suit suit, Pose pose);
SceneObject make_rect(Pose pose, int width = 120, int height = 70, Rgb color = {150, 170, 230});
SceneObject make_disk(Pose pose, int radius = 60, Rgb color = {230, 200, 60});

struct SceneSpec {
  int width = 640;
  int height = 480;
  Rgb background{20, 100, 40};
  Photometric jitter;
  std::vector<SceneObject> objects;
};

struct TruthObject {
  int index = 0;
  ObjectKind kind = ObjectKind::Card;
  // Objects whose footprints overlap share a group id (the smallest index
  // in the group).
  int group = 0;
  Box bbox;
  Pose pose;
  std::optional<Rank> rank;
  std::optional<Suit> suit;
};

struct SceneRender {
  RgbImage image;
  std::vector<TruthObject> truth;
};

// Composites objects in order (later ones on top) with 4x4 supersampling.
// Throws Error(Format) when an object leaves the canvas.
SceneRender render_scene(const SceneSpec& spec);

// Line-oriented scene description; see README for the grammar.
SceneSpec parse_scene_spec(std::istream& in);
SceneSpec read_scene_spec(const std::filesystem::path& path);
void write_scene_spec(std::ostream& out, const SceneSpec& spec);

void write_truth(std::ostream& out, const std::vector<TruthObject>& truth);
std::vector<TruthObject> read_truth(const std::filesystem::path& path);

// Four 640x480 scenes: 16 isolated objects (9 cards, 4 disks, 3 non-card
// rectangles) plus two overlapping card pairs, 18 ground-truth groups.
std::vector<SceneSpec> detection_suite();

// One card centered in a plain scene.
SceneSpec single_card_scene(Rank rank, Suit suit, double angle_deg, double scale = 1.0);

}  // namespace cardvision
