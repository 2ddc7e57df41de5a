#include "cardvision/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cardvision/error.hpp"

namespace cardvision {
namespace {

// ---------------------------------------------------------------------------
// Card face geometry, in canonical 140x200 card coordinates.

constexpr double kCardW = kCanonicalCardWidth;
constexpr double kCardH = kCanonicalCardHeight;
constexpr double kFrameHalfWidth = 0.75;
constexpr double kPaperWhite = 210.0;
constexpr double kSpotDepth = 70.0;
constexpr double kSpotRadius = 20.0;
// Deep red (128, 0, 0) as BT.601 luma, relative to white.
constexpr double kRedInk = 38.0 / 255.0;

struct Rect {
  double x0, y0, x1, y1;
  bool contains(double u, double v) const { return u >= x0 && u < x1 && v >= y0 && v < y1; }
};

// The index keeps a margin from the card edge and a wide gap between rank
// and suit, so their edge responses stay apart in the corner crop.
constexpr Rect kRankBox{9.0, 8.0, 22.0, 27.0};
constexpr Rect kTenOneBox{9.0, 12.0, 11.5, 27.0};
constexpr Rect kTenZeroBox{12.0, 8.0, 22.0, 27.0};
constexpr Rect kSuitBox{8.5, 37.0, 22.0, 52.0};
constexpr Rect kPipBox{45.0, 75.0, 95.0, 125.0};
constexpr Rect kFrame{32.0, 62.0, kCardW - 32.0, kCardH - 62.0};

using Bitmap = std::array<const char*, 7>;

// 5x7 dot-matrix rank glyphs. Shapes are chosen so that the filled
// silhouettes stay distinct after hole filling.
const Bitmap& rank_bitmap(Rank r) {
  static const std::array<Bitmap, 13> font = {{
      {"..#..", ".#.#.", ".#.#.", "#...#", "#####", "#...#", "#...#"},  // A
      {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"},  // 2
      {"####.", "....#", "....#", ".###.", "....#", "....#", "####."},  // 3
      {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."},  // 4
      {"#####", "#....", "#....", "####.", "....#", "....#", "####."},  // 5
      {"..##.", ".#...", "#....", "####.", "#...#", "#...#", ".###."},  // 6
      {"#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."},  // 7
      {".###.", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", ".###."},  // 8
      {".###.", "#...#", "#...#", ".####", "....#", "...#.", ".##.."},  // 9
      {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."},  // 0 (ten)
      {"..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."},  // J
      {".###.", "#...#", "#...#", "#...#", "#...#", ".###.", "...##"},  // Q
      {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"},  // K
  }};
  return font[index_of(r)];
}

bool bitmap_ink(const Bitmap& bm, const Rect& box, double u, double v) {
  if (!box.contains(u, v)) return false;
  const int col = std::clamp(static_cast<int>((u - box.x0) / (box.x1 - box.x0) * 5.0), 0, 4);
  const int row = std::clamp(static_cast<int>((v - box.y0) / (box.y1 - box.y0) * 7.0), 0, 6);
  return bm[row][col] == '#';
}

bool in_circle(double x, double y, double cx, double cy, double r) {
  return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
}

bool in_triangle(double x, double y, double ax, double ay, double bx, double by, double cx,
                 double cy) {
  const double d1 = (x - bx) * (ay - by) - (ax - bx) * (y - by);
  const double d2 = (x - cx) * (by - cy) - (bx - cx) * (y - cy);
  const double d3 = (x - ax) * (cy - ay) - (cx - ax) * (y - ay);
  const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(neg && pos);
}

// Suit silhouettes on the unit square, y down.
bool suit_ink(Suit s, double x, double y) {
  switch (s) {
    case Suit::Diamond:
      return std::abs(x - 0.5) / 0.36 + std::abs(y - 0.5) / 0.5 <= 1.0;
    case Suit::Heart:
      return in_circle(x, y, 0.27, 0.3, 0.25) || in_circle(x, y, 0.73, 0.3, 0.25) ||
             in_triangle(x, y, 0.03, 0.38, 0.97, 0.38, 0.5, 1.0);
    case Suit::Spade:
      return in_circle(x, y, 0.27, 0.56, 0.23) || in_circle(x, y, 0.73, 0.56, 0.23) ||
             in_triangle(x, y, 0.5, 0.0, 0.05, 0.52, 0.95, 0.52) ||
             in_triangle(x, y, 0.5, 0.55, 0.15, 1.0, 0.85, 1.0);
    case Suit::Club:
      return in_circle(x, y, 0.5, 0.25, 0.25) || in_circle(x, y, 0.23, 0.58, 0.23) ||
             in_circle(x, y, 0.77, 0.58, 0.23) || in_triangle(x, y, 0.5, 0.5, 0.2, 1.0, 0.8, 1.0);
  }
  return false;
}

bool suit_box_ink(Suit s, const Rect& box, double u, double v) {
  if (!box.contains(u, v)) return false;
  return suit_ink(s, (u - box.x0) / (box.x1 - box.x0), (v - box.y0) / (box.y1 - box.y0));
}

bool is_red(Suit s) { return s == Suit::Heart || s == Suit::Diamond; }

bool index_ink(Rank r, Suit s, double u, double v) {
  if (suit_box_ink(s, kSuitBox, u, v)) return true;
  if (r == Rank::Ten) {
    return kTenOneBox.contains(u, v) || bitmap_ink(rank_bitmap(r), kTenZeroBox, u, v);
  }
  return bitmap_ink(rank_bitmap(r), kRankBox, u, v);
}

// Thin black frame around the face, inset so it stays out of the index.
bool on_frame(double u, double v) {
  const double fx = std::min(std::abs(u - kFrame.x0), std::abs(u - kFrame.x1));
  const double fy = std::min(std::abs(v - kFrame.y0), std::abs(v - kFrame.y1));
  const bool in_x = u >= kFrame.x0 - kFrameHalfWidth && u <= kFrame.x1 + kFrameHalfWidth;
  const bool in_y = v >= kFrame.y0 - kFrameHalfWidth && v <= kFrame.y1 + kFrameHalfWidth;
  return (fx < kFrameHalfWidth && in_y) || (fy < kFrameHalfWidth && in_x);
}

// Falloff in [0, 1] away from the nearest index glyph center.
double index_falloff(double u, double v) {
  const double cx = (kRankBox.x0 + kRankBox.x1) / 2.0;
  const double d_rank = std::hypot(u - cx, v - (kRankBox.y0 + kRankBox.y1) / 2.0);
  const double d_suit = std::hypot(u - cx, v - (kSuitBox.y0 + kSuitBox.y1) / 2.0);
  const double d = std::min(d_rank, d_suit) / kSpotRadius;
  return std::min(1.0, d * d);
}

// The stock is brightest under the indices and dims smoothly away from them.
// A perfectly flat white makes histogram equalization turn the one-level
// tails of the corner blur into the strongest edges in the crop, and turns
// sensor noise into clutter; a smooth spread of white levels avoids both.
double card_shade(Rank r, Suit s, double u, double v) {
  if (on_frame(u, v)) return 0.0;
  const double falloff = std::min(index_falloff(u, v), index_falloff(kCardW - u, kCardH - v));
  const double light = kPaperWhite - kSpotDepth * falloff;
  if (index_ink(r, s, u, v) || index_ink(r, s, kCardW - u, kCardH - v) ||
      suit_box_ink(s, kPipBox, u, v)) {
    return is_red(s) ? kRedInk * light : 0.0;
  }
  return light;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// ---------------------------------------------------------------------------
// Scene compositing.

constexpr int kSuper = 4;

double bilinear(const GrayImage& img, double x, double y) {
  x = std::clamp(x, 0.0, double(img.width() - 1));
  y = std::clamp(y, 0.0, double(img.height() - 1));
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double wx = x - x0;
  const double wy = y - y0;
  return (img(x0, y0) * (1 - wx) + img(x1, y0) * wx) * (1 - wy) +
         (img(x0, y1) * (1 - wx) + img(x1, y1) * wx) * wy;
}

struct Sample {
  bool inside = false;
  double r = 0, g = 0, b = 0;
};

// Locates a scene object's local frame and evaluates it.
class Placed {
 public:
  explicit Placed(const SceneObject& obj) : obj_(obj) {
    const double rad = obj.pose.angle_deg * std::numbers::pi / 180.0;
    c_ = std::cos(rad);
    s_ = std::sin(rad);
    switch (obj.kind) {
      case ObjectKind::Card:
        raster_ = render_card(obj.rank, obj.suit, obj.pose.scale);
        half_w_ = raster_.width() / 2.0;
        half_h_ = raster_.height() / 2.0;
        break;
      case ObjectKind::Rect:
        half_w_ = obj.width * obj.pose.scale / 2.0;
        half_h_ = obj.height * obj.pose.scale / 2.0;
        break;
      case ObjectKind::Disk:
        half_w_ = half_h_ = obj.width * obj.pose.scale;
        break;
    }
  }

  // Scene-space extent of the rotated object.
  void extent(double& x0, double& y0, double& x1, double& y1) const {
    const double ex = std::abs(c_) * half_w_ + std::abs(s_) * half_h_;
    const double ey = std::abs(s_) * half_w_ + std::abs(c_) * half_h_;
    x0 = obj_.pose.cx - ex;
    x1 = obj_.pose.cx + ex;
    y0 = obj_.pose.cy - ey;
    y1 = obj_.pose.cy + ey;
  }

  Sample at(double px, double py) const {
    const double dx = px - obj_.pose.cx;
    const double dy = py - obj_.pose.cy;
    const double a = c_ * dx - s_ * dy;
    const double b = s_ * dx + c_ * dy;
    Sample out;
    switch (obj_.kind) {
      case ObjectKind::Card: {
        const double u = a + half_w_;
        const double v = b + half_h_;
        if (u < 0 || v < 0 || u >= raster_.width() || v >= raster_.height()) return out;
        const double g = bilinear(raster_, u - 0.5, v - 0.5);
        out = {true, g, g, g};
        return out;
      }
      case ObjectKind::Rect:
        if (std::abs(a) > half_w_ || std::abs(b) > half_h_) return out;
        break;
      case ObjectKind::Disk:
        if (a * a + b * b > half_w_ * half_w_) return out;
        break;
    }
    out = {true, double(obj_.color.r), double(obj_.color.g), double(obj_.color.b)};
    return out;
  }

 private:
  const SceneObject& obj_;
  GrayImage raster_;
  double c_ = 1.0, s_ = 0.0;
  double half_w_ = 0.0, half_h_ = 0.0;
};

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

[[noreturn]] void spec_error(int line, const std::string& what) {
  throw Error(ErrorKind::Format, "scene spec line " + std::to_string(line) + ": " + what);
}

template <typename T>
T take(std::istringstream& in, int line, const char* what) {
  T v{};
  if (!(in >> v)) spec_error(line, std::string("expected ") + what);
  return v;
}

Rgb take_rgb(std::istringstream& in, int line) {
  const int r = take<int>(in, line, "red");
  const int g = take<int>(in, line, "green");
  const int b = take<int>(in, line, "blue");
  for (int c : {r, g, b}) {
    if (c < 0 || c > 255) spec_error(line, "color component outside [0,255]");
  }
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
}

Pose take_pose(std::istringstream& in, int line) {
  Pose p;
  p.cx = take<double>(in, line, "cx");
  p.cy = take<double>(in, line, "cy");
  p.angle_deg = take<double>(in, line, "angle");
  p.scale = take<double>(in, line, "scale");
  if (!(p.scale > 0.0 && p.scale <= 1.5)) spec_error(line, "scale must lie in (0, 1.5]");
  return p;
}

}  // namespace

GrayImage render_card(Rank rank, Suit suit, double scale) {
  if (!(scale > 0.0 && scale <= 1.5)) {
    throw std::invalid_argument("render_card: scale must lie in (0, 1.5]");
  }
  const int w = std::max(1, static_cast<int>(std::lround(kCardW * scale)));
  const int h = std::max(1, static_cast<int>(std::lround(kCardH * scale)));
  const double su = kCardW / w;
  const double sv = kCardH / h;
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = 0; j < kSuper; ++j) {
        const double v = (y + (j + 0.5) / kSuper) * sv;
        for (int i = 0; i < kSuper; ++i) {
          const double u = (x + (i + 0.5) / kSuper) * su;
          acc += card_shade(rank, suit, u, v);
        }
      }
      out(x, y) = to_byte(acc / (kSuper * kSuper));
    }
  }
  return out;
}

GrayImage apply_jitter(const GrayImage& img, const Photometric& jitter) {
  if (jitter.is_identity()) return img;
  std::mt19937_64 rng(jitter.seed);
  std::normal_distribution<double> noise(0.0, jitter.noise_sigma > 0 ? jitter.noise_sigma : 1.0);
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    double v = src[i] * (1.0 + jitter.brightness);
    if (jitter.noise_sigma > 0) v += noise(rng);
    dst[i] = to_byte(v);
  }
  return out;
}

RgbImage apply_jitter(const RgbImage& img, const Photometric& jitter) {
  if (jitter.is_identity()) return img;
  std::mt19937_64 rng(jitter.seed);
  std::normal_distribution<double> noise(0.0, jitter.noise_sigma > 0 ? jitter.noise_sigma : 1.0);
  auto perturb = [&](std::uint8_t c) {
    double v = c * (1.0 + jitter.brightness);
    if (jitter.noise_sigma > 0) v += noise(rng);
    return to_byte(v);
  };
  RgbImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i].r = perturb(src[i].r);
    dst[i].g = perturb(src[i].g);
    dst[i].b = perturb(src[i].b);
  }
  return out;
}

std::vector<LabeledCard> render_deck(double scale) {
  std::vector<LabeledCard> deck;
  deck.reserve(52);
  for (Suit s : kAllSuits) {
    for (Rank r : kAllRanks) deck.push_back({render_card(r, s, scale), r, s});
  }
  return deck;
}

std::string to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Card: return "card";
    case ObjectKind::Rect: return "rect";
    case ObjectKind::Disk: return "disk";
  }
  return "card";
}

std::optional<ObjectKind> parse_object_kind(const std::string& text) {
  if (text == "card") return ObjectKind::Card;
  if (text == "rect") return ObjectKind::Rect;
  if (text == "disk") return ObjectKind::Disk;
  return std::nullopt;
}

ShapeClass expected_class(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Card: return ShapeClass::Card;
    case ObjectKind::Rect: return ShapeClass::Rect;
    case ObjectKind::Disk: return ShapeClass::Other;
  }
  return ShapeClass::Other;
}

SceneObject make_card(Rank rank, Suit suit, Pose pose) {
  SceneObject o;
  o.kind = ObjectKind::Card;
  o.pose = pose;
  o.rank = rank;
  o.suit = suit;
  return o;
}

SceneObject make_rect(Pose pose, int width, int height, Rgb color) {
  SceneObject o;
  o.kind = ObjectKind::Rect;
  o.pose = pose;
  o.width = width;
  o.height = height;
  o.color = color;
  return o;
}

SceneObject make_disk(Pose pose, int radius, Rgb color) {
  SceneObject o;
  o.kind = ObjectKind::Disk;
  o.pose = pose;
  o.width = radius;
  o.height = radius;
  o.color = color;
  return o;
}

SceneRender render_scene(const SceneSpec& spec) {
  if (spec.width < 3 || spec.height < 3) {
    throw Error(ErrorKind::Format, "scene canvas must be at least 3x3");
  }
  SceneRender out;
  out.image = RgbImage(spec.width, spec.height, spec.background);
  const int n = static_cast<int>(spec.objects.size());
  std::vector<BinaryImage> footprints;
  footprints.reserve(n);

  for (int k = 0; k < n; ++k) {
    const SceneObject& obj = spec.objects[k];
    if (!(obj.pose.scale > 0.0 && obj.pose.scale <= 1.5)) {
      throw Error(ErrorKind::Format, "object " + std::to_string(k) + ": scale outside (0, 1.5]");
    }
    if (obj.kind != ObjectKind::Card && (obj.width < 1 || obj.height < 1)) {
      throw Error(ErrorKind::Format, "object " + std::to_string(k) + ": size must be >= 1");
    }
    const Placed placed(obj);
    double ex0, ey0, ex1, ey1;
    placed.extent(ex0, ey0, ex1, ey1);
    if (ex0 < 0 || ey0 < 0 || ex1 > spec.width || ey1 > spec.height) {
      throw Error(ErrorKind::Format,
                  "object " + std::to_string(k) + " (" + to_string(obj.kind) + ") leaves the canvas");
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(ex0)) - 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(ey0)) - 1);
    const int x1 = std::min(spec.width, static_cast<int>(std::ceil(ex1)) + 1);
    const int y1 = std::min(spec.height, static_cast<int>(std::ceil(ey1)) + 1);

    BinaryImage footprint(spec.width, spec.height);
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        int hits = 0;
        double r = 0, g = 0, b = 0;
        for (int j = 0; j < kSuper; ++j) {
          for (int i = 0; i < kSuper; ++i) {
            const Sample s = placed.at(x + (i + 0.5) / kSuper, y + (j + 0.5) / kSuper);
            if (!s.inside) continue;
            ++hits;
            r += s.r;
            g += s.g;
            b += s.b;
          }
        }
        if (hits == 0) continue;
        footprint(x, y) = true;
        Rgb& px = out.image(x, y);
        const int miss = kSuper * kSuper - hits;
        const double total = kSuper * kSuper;
        px = {to_byte((r + miss * px.r) / total), to_byte((g + miss * px.g) / total),
              to_byte((b + miss * px.b) / total)};
      }
    }

    TruthObject t;
    t.index = k;
    t.kind = obj.kind;
    t.bbox = tight_box(footprint);
    t.pose = obj.pose;
    if (obj.kind == ObjectKind::Card) {
      t.rank = obj.rank;
      t.suit = obj.suit;
    }
    out.truth.push_back(t);
    footprints.push_back(std::move(footprint));
  }

  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Box& a = out.truth[i].bbox;
      const Box& b = out.truth[j].bbox;
      if (a.x >= b.x + b.width || b.x >= a.x + a.width || a.y >= b.y + b.height ||
          b.y >= a.y + a.height) {
        continue;
      }
      bool touch = false;
      for (int y = std::max(a.y, b.y); y < std::min(a.y + a.height, b.y + b.height) && !touch; ++y)
        for (int x = std::max(a.x, b.x); x < std::min(a.x + a.width, b.x + b.width); ++x)
          if (footprints[i](x, y) && footprints[j](x, y)) {
            touch = true;
            break;
          }
      if (touch) {
        const int ri = find_root(parent, i);
        const int rj = find_root(parent, j);
        parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  for (int i = 0; i < n; ++i) out.truth[i].group = find_root(parent, i);

  out.image = apply_jitter(out.image, spec.jitter);
  return out;
}

SceneSpec parse_scene_spec(std::istream& in) {
  SceneSpec spec;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "canvas") {
      spec.width = take<int>(ss, line, "width");
      spec.height = take<int>(ss, line, "height");
      if (spec.width < 3 || spec.height < 3) spec_error(line, "canvas must be at least 3x3");
    } else if (key == "background") {
      spec.background = take_rgb(ss, line);
    } else if (key == "jitter") {
      spec.jitter.brightness = take<double>(ss, line, "brightness");
      spec.jitter.noise_sigma = take<double>(ss, line, "noise sigma");
      spec.jitter.seed = take<std::uint64_t>(ss, line, "seed");
      if (spec.jitter.noise_sigma < 0) spec_error(line, "noise sigma must be >= 0");
    } else if (key == "card") {
      const Pose pose = take_pose(ss, line);
      const auto rank = parse_rank(take<std::string>(ss, line, "rank"));
      if (!rank) spec_error(line, "unknown rank");
      const auto suit = parse_suit(take<std::string>(ss, line, "suit"));
      if (!suit) spec_error(line, "unknown suit");
      spec.objects.push_back(make_card(*rank, *suit, pose));
    } else if (key == "rect") {
      SceneObject o = make_rect(take_pose(ss, line));
      if (int w; ss >> w) {
        o.width = w;
        o.height = take<int>(ss, line, "height");
        if (std::string rest; ss >> std::ws, !ss.eof()) o.color = take_rgb(ss, line);
      }
      if (o.width < 1 || o.height < 1) spec_error(line, "rect size must be >= 1");
      spec.objects.push_back(o);
    } else if (key == "disk") {
      SceneObject o = make_disk(take_pose(ss, line));
      if (int r; ss >> r) {
        o.width = o.height = r;
        if (ss >> std::ws, !ss.eof()) o.color = take_rgb(ss, line);
      }
      if (o.width < 1) spec_error(line, "disk radius must be >= 1");
      spec.objects.push_back(o);
    } else {
      spec_error(line, "unknown record '" + key + "'");
    }
    std::string extra;
    if (ss.clear(), ss >> extra) spec_error(line, "unexpected trailing field '" + extra + "'");
  }
  return spec;
}

SceneSpec read_scene_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  try {
    return parse_scene_spec(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_scene_spec(std::ostream& out, const SceneSpec& spec) {
  out << "canvas " << spec.width << ' ' << spec.height << '\n';
  out << "background " << int(spec.background.r) << ' ' << int(spec.background.g) << ' '
      << int(spec.background.b) << '\n';
  if (!spec.jitter.is_identity()) {
    out << "jitter " << spec.jitter.brightness << ' ' << spec.jitter.noise_sigma << ' '
        << spec.jitter.seed << '\n';
  }
  for (const SceneObject& o : spec.objects) {
    out << to_string(o.kind) << ' ' << o.pose.cx << ' ' << o.pose.cy << ' ' << o.pose.angle_deg
        << ' ' << o.pose.scale;
    switch (o.kind) {
      case ObjectKind::Card:
        out << ' ' << to_string(o.rank) << ' ' << to_string(o.suit);
        break;
      case ObjectKind::Rect:
        out << ' ' << o.width << ' ' << o.height << ' ' << int(o.color.r) << ' '
            << int(o.color.g) << ' ' << int(o.color.b);
        break;
      case ObjectKind::Disk:
        out << ' ' << o.width << ' ' << int(o.color.r) << ' ' << int(o.color.g) << ' '
            << int(o.color.b);
        break;
    }
    out << '\n';
  }
}

void write_truth(std::ostream& out, const std::vector<TruthObject>& truth) {
  out << "# index kind group x y w h cx cy angle scale rank suit\n";
  for (const TruthObject& t : truth) {
    out << t.index << ' ' << to_string(t.kind) << ' ' << t.group << ' ' << t.bbox.x << ' '
        << t.bbox.y << ' ' << t.bbox.width << ' ' << t.bbox.height << ' ' << t.pose.cx << ' '
        << t.pose.cy << ' ' << t.pose.angle_deg << ' ' << t.pose.scale << ' '
        << (t.rank ? to_string(*t.rank) : "-") << ' ' << (t.suit ? to_string(*t.suit) : "-")
        << '\n';
  }
}

std::vector<TruthObject> read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open truth file '" + path.string() + "'");
  std::vector<TruthObject> truth;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    TruthObject t;
    if (!(ss >> t.index)) continue;
    std::string kind, rank, suit;
    if (!(ss >> kind >> t.group >> t.bbox.x >> t.bbox.y >> t.bbox.width >> t.bbox.height >>
          t.pose.cx >> t.pose.cy >> t.pose.angle_deg >> t.pose.scale >> rank >> suit)) {
      throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": malformed truth record");
    }
    const auto k = parse_object_kind(kind);
    if (!k) throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": unknown kind");
    t.kind = *k;
    if (rank != "-") t.rank = parse_rank(rank);
    if (suit != "-") t.suit = parse_suit(suit);
    truth.push_back(t);
  }
  return truth;
}

std::vector<SceneSpec> detection_suite() {
  using R = Rank;
  using S = Suit;
  constexpr double cs = 0.8;  // card scale
  std::vector<SceneSpec> scenes(4);

  scenes[0].objects = {
      make_card(R::Ace, S::Spade, {110, 130, 0, cs}),
      make_card(R::King, S::Heart, {300, 140, 25, cs}),
      make_card(R::Seven, S::Club, {510, 150, -60, cs}),
      make_disk({130, 370, 0, cs}),
      make_rect({380, 370, 10, 1.0}),
  };
  scenes[1].objects = {
      make_card(R::Ten, S::Diamond, {140, 200, 45, cs}),
      make_card(R::Queen, S::Spade, {400, 200, 75, cs}),
      make_disk({580, 100, 0, cs}),
      make_rect({520, 380, -20, 1.0}),
  };
  scenes[2].objects = {
      make_card(R::Three, S::Heart, {110, 150, 10, cs}),
      make_card(R::Jack, S::Club, {290, 150, -15, cs}),
      make_card(R::Five, S::Diamond, {470, 150, 0, cs}),
      make_card(R::Nine, S::Spade, {540, 200, 30, cs}),
      make_rect({150, 380, 0, 1.0}, 130, 60, {200, 120, 90}),
      make_disk({400, 380, 0, cs}, 60, {180, 60, 200}),
  };
  scenes[3].objects = {
      make_card(R::Two, S::Club, {110, 300, 90, cs}),
      make_card(R::Eight, S::Heart, {300, 120, -80, cs}),
      make_disk({120, 100, 0, cs}),
      make_card(R::Four, S::Spade, {400, 340, 0, cs}),
      make_card(R::Six, S::Diamond, {480, 330, -40, cs}),
  };
  return scenes;
}

SceneSpec single_card_scene(Rank rank, Suit suit, double angle_deg, double scale) {
  SceneSpec spec;
  spec.objects.push_back(make_card(rank, suit, {320, 240, angle_deg, scale}));
  return spec;
}

}  // namespace cardvision
