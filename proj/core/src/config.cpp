#include "cardvision/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "cardvision/error.hpp"

namespace cardvision {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::Format, "bad value '" + value + "' for " + key);
}

double to_double(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  double v{};
  if (!(in >> v) || !(in >> std::ws).eof()) bad_value(key, value);
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  int v{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end) bad_value(key, value);
  return v;
}

Kernel to_kernel(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::string head;
  in >> head;
  try {
    if (head == "identity") return Kernel::identity();
    if (head == "mean") {
      int n = 0;
      if (!(in >> n)) bad_value(key, value);
      return Kernel::mean(n);
    }
    const int w = to_int(key, head);
    int h = 0;
    if (!(in >> h) || w < 1 || h < 1) bad_value(key, value);
    std::vector<double> weights(static_cast<std::size_t>(w) * h);
    for (double& x : weights) {
      if (!(in >> x)) bad_value(key, value);
    }
    return Kernel(w, h, std::move(weights));
  } catch (const std::invalid_argument&) {
    bad_value(key, value);
  }
}

using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"detector.fudge",
       [](auto& c, auto& k, auto& v) { c.detector.edge.fudge_factor = to_double(k, v); }},
      {"detector.min_area",
       [](auto& c, auto& k, auto& v) {
         if (v == "auto") c.detector.min_area.reset();
         else c.detector.min_area = to_int(k, v);
       }},
      {"detector.rect_fill_ratio_min",
       [](auto& c, auto& k, auto& v) { c.detector.rect_fill_ratio_min = to_double(k, v); }},
      {"detector.card_aspect_lo",
       [](auto& c, auto& k, auto& v) { c.detector.card_aspect_lo = to_double(k, v); }},
      {"detector.card_aspect_hi",
       [](auto& c, auto& k, auto& v) { c.detector.card_aspect_hi = to_double(k, v); }},
      {"detector.edge_strip_width",
       [](auto& c, auto& k, auto& v) { c.detector.edge_strip_width = to_int(k, v); }},
      {"detector.canonical_width",
       [](auto& c, auto& k, auto& v) { c.detector.canonical_width = to_int(k, v); }},
      {"detector.canonical_height",
       [](auto& c, auto& k, auto& v) { c.detector.canonical_height = to_int(k, v); }},
      {"detector.tau_edge",
       [](auto& c, auto& k, auto& v) { c.detector.tau_edge = to_double(k, v); }},
      {"semantics.corner_w_frac",
       [](auto& c, auto& k, auto& v) { c.semantics.corner_w_frac = to_double(k, v); }},
      {"semantics.corner_h_frac",
       [](auto& c, auto& k, auto& v) { c.semantics.corner_h_frac = to_double(k, v); }},
      {"semantics.min_confidence",
       [](auto& c, auto& k, auto& v) { c.semantics.min_confidence = to_double(k, v); }},
      {"semantics.conv_kernel",
       [](auto& c, auto& k, auto& v) { c.semantics.conv_kernel = to_kernel(k, v); }},
      {"semantics.blur_sigma",
       [](auto& c, auto& k, auto& v) { c.semantics.blur_sigma = to_double(k, v); }},
      {"semantics.fudge",
       [](auto& c, auto& k, auto& v) { c.semantics.edge.fudge_factor = to_double(k, v); }},
      {"semantics.close_size",
       [](auto& c, auto& k, auto& v) { c.semantics.close_size = to_int(k, v); }},
      {"semantics.min_glyph_area",
       [](auto& c, auto& k, auto& v) { c.semantics.min_glyph_area = to_int(k, v); }},
      {"semantics.split_fallback",
       [](auto& c, auto& k, auto& v) { c.semantics.split_fallback = to_double(k, v); }},
      {"semantics.match_margin",
       [](auto& c, auto& k, auto& v) { c.semantics.match_margin = to_int(k, v); }},
  };
  return table;
}

}  // namespace

void set_option(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw Error(ErrorKind::Format, "unknown config key '" + key + "'");
  it->second(cfg, key, trim(value));
}

void apply_config(PipelineConfig& cfg, std::istream& in) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Format, "config line " + std::to_string(line) + ": expected key = value");
    }
    try {
      set_option(cfg, trim(raw.substr(0, eq)), raw.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), "config line " + std::to_string(line) + ": " + e.what());
    }
  }
}

void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  try {
    apply_config(cfg, in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_config(std::ostream& out, const PipelineConfig& cfg) {
  const DetectorConfig& d = cfg.detector;
  const SemanticsConfig& s = cfg.semantics;
  out << "detector.fudge = " << d.edge.fudge_factor << '\n';
  out << "detector.min_area = " << (d.min_area ? std::to_string(*d.min_area) : "auto") << '\n';
  out << "detector.rect_fill_ratio_min = " << d.rect_fill_ratio_min << '\n';
  out << "detector.card_aspect_lo = " << d.card_aspect_lo << '\n';
  out << "detector.card_aspect_hi = " << d.card_aspect_hi << '\n';
  out << "detector.edge_strip_width = " << d.edge_strip_width << '\n';
  out << "detector.canonical_width = " << d.canonical_width << '\n';
  out << "detector.canonical_height = " << d.canonical_height << '\n';
  out << "detector.tau_edge = " << d.tau_edge << '\n';
  out << "semantics.corner_w_frac = " << s.corner_w_frac << '\n';
  out << "semantics.corner_h_frac = " << s.corner_h_frac << '\n';
  out << "semantics.min_confidence = " << s.min_confidence << '\n';
  out << "semantics.conv_kernel = " << s.conv_kernel.width() << ' ' << s.conv_kernel.height();
  const auto prec = out.precision(17);
  for (double w : s.conv_kernel.weights()) out << ' ' << w;
  out.precision(prec);
  out << '\n';
  out << "semantics.blur_sigma = " << s.blur_sigma << '\n';
  out << "semantics.fudge = " << s.edge.fudge_factor << '\n';
  out << "semantics.close_size = " << s.close_size << '\n';
  out << "semantics.min_glyph_area = " << s.min_glyph_area << '\n';
  out << "semantics.split_fallback = " << s.split_fallback << '\n';
  out << "semantics.match_margin = " << s.match_margin << '\n';
}

}  // namespace cardvision
