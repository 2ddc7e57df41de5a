#include "cardvision/templates.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cardvision/error.hpp"
#include "cardvision/pnm.hpp"
#include "cardvision/semantics.hpp"

namespace fs = std::filesystem;

namespace cardvision {
namespace {

[[noreturn]] void template_error(const std::string& what) {
  throw Error(ErrorKind::Template, what);
}

bool is_constant(const BinaryImage& glyph) {
  const std::size_t on = count_foreground(glyph);
  return on == 0 || on == glyph.size();
}

GrayImage strip(const GrayImage& card, int x0, int width) {
  return crop(card, Box{x0, 0, width, card.height()});
}

int parse_int(const std::string& text, const std::string& context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Format, context + ": bad integer '" + text + "'");
  }
  return value;
}

}  // namespace

void TemplateSet::validate() const {
  if (left_edge.empty() || right_edge.empty()) template_error("missing edge template");
  if (left_edge.width() != right_edge.width() ||
      left_edge.height() != right_edge.height()) {
    template_error("left and right edge templates differ in size");
  }
  const int gw = ranks[0].width();
  const int gh = ranks[0].height();
  for (Rank r : kAllRanks) {
    const BinaryImage& g = ranks[index_of(r)];
    if (g.empty()) template_error("missing rank glyph '" + glyph_key(r) + "'");
    if (g.width() != gw || g.height() != gh) {
      template_error("rank glyph '" + glyph_key(r) + "' has non-uniform size");
    }
    if (is_constant(g)) template_error("rank glyph '" + glyph_key(r) + "' is constant");
  }
  for (Suit s : kAllSuits) {
    const BinaryImage& g = suits[index_of(s)];
    if (g.empty()) template_error("missing suit glyph '" + to_string(s) + "'");
    if (g.width() != gw || g.height() != gh) {
      template_error("suit glyph '" + to_string(s) + "' has non-uniform size");
    }
    if (is_constant(g)) template_error("suit glyph '" + to_string(s) + "' is constant");
  }
}

TemplateSet build_templates(std::span<const LabeledCard> cards,
                            const SemanticsConfig& semantics,
                            const TemplateGeometry& geometry) {
  std::array<const LabeledCard*, 13> rank_source{};
  std::array<const LabeledCard*, 4> suit_source{};
  for (const LabeledCard& c : cards) {
    if (!rank_source[index_of(c.rank)]) rank_source[index_of(c.rank)] = &c;
    if (!suit_source[index_of(c.suit)]) suit_source[index_of(c.suit)] = &c;
  }
  std::string missing;
  for (Rank r : kAllRanks) {
    if (!rank_source[index_of(r)]) missing += " rank " + to_string(r) + ";";
  }
  for (Suit s : kAllSuits) {
    if (!suit_source[index_of(s)]) missing += " suit " + to_string(s) + ";";
  }
  if (!missing.empty()) template_error("card set does not cover:" + missing);

  const int cw = geometry.card_width;
  const int ch = geometry.card_height;
  const int sw = geometry.edge_strip_width;
  if (sw < 1 || sw > cw) throw std::invalid_argument("edge strip wider than card");

  std::vector<double> left(static_cast<std::size_t>(sw) * ch, 0.0);
  std::vector<double> right(left.size(), 0.0);
  for (const LabeledCard& c : cards) {
    const GrayImage card = resize(c.image, cw, ch);
    const GrayImage l = strip(card, 0, sw);
    const GrayImage r = strip(card, cw - sw, sw);
    for (std::size_t i = 0; i < left.size(); ++i) {
      left[i] += l.pixels()[i];
      right[i] += r.pixels()[i];
    }
  }
  TemplateSet ts;
  ts.left_edge = GrayImage(sw, ch);
  ts.right_edge = GrayImage(sw, ch);
  const double n = static_cast<double>(cards.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    ts.left_edge.pixels()[i] = static_cast<std::uint8_t>(std::lround(left[i] / n));
    ts.right_edge.pixels()[i] = static_cast<std::uint8_t>(std::lround(right[i] / n));
  }

  auto glyphs_of = [&](const LabeledCard& c) {
    const GrayImage card = resize(c.image, cw, ch);
    const BinaryImage mask = preprocess_corner(extract_corner(card, semantics), semantics);
    return split_corner(mask, semantics);
  };
  for (Rank r : kAllRanks) {
    const CornerGlyphs g = glyphs_of(*rank_source[index_of(r)]);
    ts.ranks[index_of(r)] =
        normalize_glyph(g.rank, geometry.glyph_width, geometry.glyph_height);
  }
  for (Suit s : kAllSuits) {
    const CornerGlyphs g = glyphs_of(*suit_source[index_of(s)]);
    ts.suits[index_of(s)] =
        normalize_glyph(g.suit, geometry.glyph_width, geometry.glyph_height);
  }
  ts.validate();
  return ts;
}

void save_templates(const TemplateSet& templates, const fs::path& dir) {
  templates.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());

  std::ostringstream manifest;
  auto entry = [&](const char* kind, const std::string& key, const std::string& file,
                   int w, int h) {
    manifest << kind << '\t' << key << '\t' << file << '\t' << w << '\t' << h << '\n';
  };
  write_pgm(dir / "edge_left.pgm", templates.left_edge);
  entry("edge", "left", "edge_left.pgm", templates.left_edge.width(),
        templates.left_edge.height());
  write_pgm(dir / "edge_right.pgm", templates.right_edge);
  entry("edge", "right", "edge_right.pgm", templates.right_edge.width(),
        templates.right_edge.height());
  for (Rank r : kAllRanks) {
    const std::string file = "rank_" + glyph_key(r) + ".pgm";
    const BinaryImage& g = templates.ranks[index_of(r)];
    write_mask(dir / file, g);
    entry("rank", glyph_key(r), file, g.width(), g.height());
  }
  for (Suit s : kAllSuits) {
    const std::string file = "suit_" + to_string(s) + ".pgm";
    const BinaryImage& g = templates.suits[index_of(s)];
    write_mask(dir / file, g);
    entry("suit", to_string(s), file, g.width(), g.height());
  }

  std::ofstream out(dir / "manifest.tsv", std::ios::binary);
  out << manifest.str();
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + (dir / "manifest.tsv").string() + "'");
}

TemplateSet load_templates(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "template directory '" + dir.string() + "' not found");
  }
  const fs::path manifest_path = dir / "manifest.tsv";
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + manifest_path.string() + "'");

  TemplateSet ts;
  std::array<bool, 13> have_rank{};
  std::array<bool, 4> have_suit{};
  bool have_left = false, have_right = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = manifest_path.string() + ":" + std::to_string(line_no);

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 5) {
      throw Error(ErrorKind::Format, where + ": expected 5 tab-separated fields");
    }
    const std::string& kind = fields[0];
    const std::string& key = fields[1];
    const fs::path file = dir / fields[2];
    const int w = parse_int(fields[3], where);
    const int h = parse_int(fields[4], where);
    if (!fs::exists(file)) {
      throw Error(ErrorKind::Io, where + ": missing template file '" + file.string() + "'");
    }

    auto check_dims = [&](int iw, int ih) {
      if (iw != w || ih != h) {
        throw Error(ErrorKind::Format,
                    where + ": '" + file.string() + "' is " + std::to_string(iw) + "x" +
                        std::to_string(ih) + ", manifest says " + std::to_string(w) + "x" +
                        std::to_string(h));
      }
    };

    if (kind == "edge") {
      GrayImage img = read_pgm(file);
      check_dims(img.width(), img.height());
      if (key == "left") {
        ts.left_edge = std::move(img);
        have_left = true;
      } else if (key == "right") {
        ts.right_edge = std::move(img);
        have_right = true;
      } else {
        throw Error(ErrorKind::Format, where + ": unknown edge key '" + key + "'");
      }
    } else if (kind == "rank") {
      const auto r = parse_rank(key);
      if (!r || (*r == Rank::Ten && key != "0")) {
        throw Error(ErrorKind::Format, where + ": unknown rank key '" + key + "'");
      }
      BinaryImage g = read_mask(file);
      check_dims(g.width(), g.height());
      ts.ranks[index_of(*r)] = std::move(g);
      have_rank[index_of(*r)] = true;
    } else if (kind == "suit") {
      const auto s = parse_suit(key);
      if (!s) throw Error(ErrorKind::Format, where + ": unknown suit key '" + key + "'");
      BinaryImage g = read_mask(file);
      check_dims(g.width(), g.height());
      ts.suits[index_of(*s)] = std::move(g);
      have_suit[index_of(*s)] = true;
    } else {
      throw Error(ErrorKind::Format, where + ": unknown kind '" + kind + "'");
    }
  }
  if (!have_left || !have_right) template_error(manifest_path.string() + ": missing edge entry");
  for (Rank r : kAllRanks) {
    if (!have_rank[index_of(r)]) {
      template_error(manifest_path.string() + ": missing rank '" + glyph_key(r) + "'");
    }
  }
  for (Suit s : kAllSuits) {
    if (!have_suit[index_of(s)]) {
      template_error(manifest_path.string() + ": missing suit '" + to_string(s) + "'");
    }
  }
  ts.validate();
  return ts;
}

}  // namespace cardvision
