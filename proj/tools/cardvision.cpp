// cardvision: command-line front end for the two-pass card reader.
//
// Exit codes: 0 ok, 1 usage, 2 input/output, 3 card could not be read.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cardvision/config.hpp"
#include "cardvision/error.hpp"
#include "cardvision/eval.hpp"
#include "cardvision/pipeline.hpp"
#include "cardvision/pnm.hpp"
#include "cardvision/synth.hpp"
#include "cardvision/templates.hpp"

namespace fs = std::filesystem;
using namespace cardvision;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitPipeline = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::optional<double> fudge;
  std::optional<int> min_area;
  std::vector<std::string> sets;  // key=value overrides
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value file applied before flags");
  cmd->add_option("--fudge", c.fudge, "Sobel fudge factor for scene edges (default 0.5)");
  cmd->add_option("--min-area", c.min_area,
                  "smallest scene component kept, px (default 300 scaled to the scene)");
  cmd->add_option("--set", c.sets, "override one knob, e.g. detector.tau_edge=0.1");
}

// File first, then explicit flags, so the command line always wins.
PipelineConfig build_config(const Common& c) {
  PipelineConfig cfg;
  try {
    if (!c.config_path.empty()) apply_config_file(cfg, c.config_path);
    if (c.fudge) cfg.detector.edge.fudge_factor = *c.fudge;
    if (c.min_area) cfg.detector.min_area = *c.min_area;
    for (const std::string& kv : c.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
      set_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.detector.validate();
    cfg.semantics.validate();
  } catch (const Error& e) {
    // A missing config file is an I/O problem; a bad key or value is usage.
    if (e.kind() == ErrorKind::Io) throw;
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

TemplateSet open_templates(const std::string& dir) {
  if (dir.empty()) throw UsageError("--templates DIR is required");
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Io, "template directory '" + dir + "' not found");
  return load_templates(dir);
}

// Writes to `path`, or stdout when the path is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  fn(out);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

int run_detect(const std::string& image, const std::string& templates_dir,
               const std::string& out_path, const std::string& report_path, const Common& c) {
  const PipelineConfig cfg = build_config(c);
  const TemplateSet templates = open_templates(templates_dir);
  const RgbImage scene = read_ppm(fs::path(image));
  const auto dets = analyze_scene(scene, templates, cfg.detector, cfg.semantics);
  if (!out_path.empty()) write_ppm(fs::path(out_path), annotate(scene, dets));
  emit(report_path, [&](std::ostream& os) { write_report(os, dets); });
  return kExitOk;
}

int run_read(const std::string& image, const std::string& templates_dir, const Common& c) {
  const PipelineConfig cfg = build_config(c);
  const TemplateSet templates = open_templates(templates_dir);
  const GrayImage card = read_any_as_gray(image);
  const CardLabel label = read_card(card, templates, cfg.semantics);
  char scores[64];
  std::snprintf(scores, sizeof scores, "rank_score=%.4f suit_score=%.4f", label.rank_score,
                label.suit_score);
  std::cout << "rank=" << to_string(label.rank) << " suit=" << to_string(label.suit) << ' '
            << scores << '\n';
  return kExitOk;
}

// Manifest lines: filename<TAB>rank<TAB>suit, '#' comments, paths relative to
// the manifest's directory.
std::vector<LabeledCard> read_card_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorKind::Io, "cannot open card manifest '" + manifest.string() + "'");
  std::vector<LabeledCard> cards;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '#') continue;
    std::istringstream ss(raw);
    std::string file, rank, suit;
    if (!std::getline(ss, file, '\t') || !std::getline(ss, rank, '\t') ||
        !std::getline(ss, suit, '\t')) {
      throw Error(ErrorKind::Format,
                  manifest.string() + ":" + std::to_string(line) + ": expected filename, rank, suit");
    }
    const auto r = parse_rank(rank);
    const auto s = parse_suit(suit);
    if (!r || !s) {
      throw Error(ErrorKind::Format,
                  manifest.string() + ":" + std::to_string(line) + ": unknown rank or suit");
    }
    cards.push_back({read_any_as_gray(manifest.parent_path() / file), *r, *s});
  }
  return cards;
}

int run_templates_build(const std::string& cards_dir, std::string manifest,
                        const std::string& out_dir, const Common& c) {
  const PipelineConfig cfg = build_config(c);
  if (out_dir.empty()) throw UsageError("--out DIR is required");
  if (manifest.empty()) manifest = (fs::path(cards_dir) / "cards.tsv").string();
  const auto cards = read_card_manifest(manifest);
  TemplateGeometry geometry;
  geometry.card_width = cfg.detector.canonical_width;
  geometry.card_height = cfg.detector.canonical_height;
  geometry.edge_strip_width = cfg.detector.edge_strip_width;
  const TemplateSet ts = build_templates(cards, cfg.semantics, geometry);
  save_templates(ts, out_dir);
  std::cout << "templates written to " << out_dir << " from " << cards.size() << " cards\n";
  return kExitOk;
}

void write_scene(const SceneSpec& spec, const fs::path& image, const fs::path& truth) {
  const SceneRender r = render_scene(spec);
  write_ppm(image, r.image);
  std::ofstream out(truth);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + truth.string() + "'");
  write_truth(out, r.truth);
}

int run_synth(const std::string& spec_path, const std::string& out_path, std::string truth_path,
              const std::string& suite_dir, const std::string& deck_dir,
              std::optional<std::uint64_t> seed) {
  const int modes = !spec_path.empty() + !suite_dir.empty() + !deck_dir.empty();
  if (modes != 1) throw UsageError("synth takes exactly one of SPEC, --suite DIR, --deck DIR");

  if (!deck_dir.empty()) {
    fs::create_directories(deck_dir);
    std::ofstream manifest(fs::path(deck_dir) / "cards.tsv");
    if (!manifest) throw Error(ErrorKind::Io, "cannot write manifest in '" + deck_dir + "'");
    for (const LabeledCard& card : render_deck()) {
      const std::string name = to_string(card.rank) + "_" + to_string(card.suit) + ".pgm";
      write_pgm(fs::path(deck_dir) / name, card.image);
      manifest << name << '\t' << to_string(card.rank) << '\t' << to_string(card.suit) << '\n';
    }
    return kExitOk;
  }

  if (!suite_dir.empty()) {
    fs::create_directories(suite_dir);
    int i = 0;
    for (SceneSpec spec : detection_suite()) {
      if (seed) spec.jitter.seed = *seed;
      const std::string stem = "scene" + std::to_string(i++);
      const fs::path base = fs::path(suite_dir) / stem;
      std::ofstream spec_out(fs::path(base).replace_extension(".scene"));
      if (!spec_out) throw Error(ErrorKind::Io, "cannot write into '" + suite_dir + "'");
      write_scene_spec(spec_out, spec);
      write_scene(spec, fs::path(base).replace_extension(".ppm"),
                  fs::path(base).replace_extension(".truth"));
    }
    return kExitOk;
  }

  if (out_path.empty()) throw UsageError("--out PATH is required");
  SceneSpec spec;
  try {
    spec = read_scene_spec(spec_path);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Format) throw UsageError(e.what());
    throw;
  }
  if (seed) spec.jitter.seed = *seed;
  if (truth_path.empty()) truth_path = fs::path(out_path).replace_extension(".truth").string();
  write_scene(spec, out_path, truth_path);
  return kExitOk;
}

int run_eval(const std::string& scenes_dir, const std::string& templates_dir,
             const std::string& report_path, std::uint64_t seed, const Common& c) {
  const PipelineConfig cfg = build_config(c);
  const TemplateSet templates = open_templates(templates_dir);
  const EvalReport report = evaluate(scenes_dir, templates, cfg, seed);
  emit(report_path, [&](std::ostream& os) { write_eval_report(os, report); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Playing-card detection and rank/suit reading"};
  app.require_subcommand(1);

  Common common;
  std::string image, templates_dir, out_path, report_path, truth_path, manifest;
  std::string suite_dir, deck_dir, spec_path, scenes_dir, cards_dir;
  std::optional<std::uint64_t> seed;

  auto* detect_cmd = app.add_subcommand("detect", "find cards in a scene and read them");
  detect_cmd->add_option("image", image, "scene PPM")->required();
  detect_cmd->add_option("--templates", templates_dir, "template directory")->required();
  detect_cmd->add_option("--out", out_path, "annotated PPM to write");
  detect_cmd->add_option("--report", report_path, "detections report (default stdout)");
  add_common(detect_cmd, common);

  auto* read_cmd = app.add_subcommand("read", "read rank and suit of one upright card");
  read_cmd->add_option("image", image, "card PGM/PPM")->required();
  read_cmd->add_option("--templates", templates_dir, "template directory")->required();
  add_common(read_cmd, common);

  auto* templates_cmd = app.add_subcommand("templates", "template management");
  templates_cmd->require_subcommand(1);
  auto* build_cmd = templates_cmd->add_subcommand("build", "build templates from labelled cards");
  build_cmd->add_option("cards", cards_dir, "directory holding the card images")->required();
  build_cmd->add_option("--manifest", manifest, "filename/rank/suit TSV (default CARDS/cards.tsv)");
  build_cmd->add_option("--out", out_path, "template directory to write")->required();
  add_common(build_cmd, common);

  auto* synth_cmd = app.add_subcommand("synth", "render synthetic scenes or cards");
  synth_cmd->add_option("spec", spec_path, "scene description file");
  synth_cmd->add_option("--out", out_path, "scene PPM to write");
  synth_cmd->add_option("--truth", truth_path, "ground truth to write (default beside --out)");
  synth_cmd->add_option("--suite", suite_dir, "write the four-scene detection suite here");
  synth_cmd->add_option("--deck", deck_dir, "write the 52-card deck and cards.tsv here");
  synth_cmd->add_option("--seed", seed, "override the jitter seed");

  std::uint64_t eval_seed = 7;
  auto* eval_cmd = app.add_subcommand("eval", "score scenes and run the recognition experiments");
  eval_cmd->add_option("scenes", scenes_dir, "directory of NAME.ppm + NAME.truth")->required();
  eval_cmd->add_option("--templates", templates_dir, "template directory")->required();
  eval_cmd->add_option("--report", report_path, "report path (default stdout)");
  eval_cmd->add_option("--seed", eval_seed, "seed for the jittered renders");
  add_common(eval_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*detect_cmd) return run_detect(image, templates_dir, out_path, report_path, common);
    if (*read_cmd) return run_read(image, templates_dir, common);
    if (*build_cmd) return run_templates_build(cards_dir, manifest, out_path, common);
    if (*synth_cmd) return run_synth(spec_path, out_path, truth_path, suite_dir, deck_dir, seed);
    if (*eval_cmd) return run_eval(scenes_dir, templates_dir, report_path, eval_seed, common);
  } catch (const UsageError& e) {
    std::cerr << "cardvision: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "cardvision: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::EmptyCorner:
      case ErrorKind::LowConfidence:
        return kExitPipeline;
      default:
        return kExitIo;
    }
  } catch (const fs::filesystem_error& e) {
    std::cerr << "cardvision: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cardvision: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
