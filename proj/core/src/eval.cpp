#include "cardvision/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

#include "cardvision/error.hpp"
#include "cardvision/pipeline.hpp"
#include "cardvision/pnm.hpp"

namespace cardvision {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

bool read_ok(const GrayImage& img, Rank r, Suit s, const TemplateSet& templates,
             const SemanticsConfig& cfg) {
  try {
    const CardLabel label = read_card(img, templates, cfg);
    return label.rank == r && label.suit == s;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyCorner && e.kind() != ErrorKind::LowConfidence) throw;
    return false;
  }
}

}  // namespace

double box_iou(const Box& a, const Box& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.x + a.width, b.x + b.width);
  const int y1 = std::min(a.y + a.height, b.y + b.height);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  const double inter = double(x1 - x0) * (y1 - y0);
  const double uni = double(a.width) * a.height + double(b.width) * b.height - inter;
  return inter / uni;
}

SceneScore score_scene(const std::string& name, const std::vector<TruthObject>& truth,
                       const std::vector<Detection>& detections, double seconds) {
  SceneScore sc;
  sc.name = name;
  sc.seconds = seconds;

  struct Pair {
    double iou;
    std::size_t t, d;
  };
  std::vector<Pair> pairs;
  for (std::size_t t = 0; t < truth.size(); ++t)
    for (std::size_t d = 0; d < detections.size(); ++d)
      if (const double iou = box_iou(truth[t].bbox, detections[d].props.bbox); iou >= 0.5)
        pairs.push_back({iou, t, d});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.iou > b.iou; });
  std::vector<int> match_of_truth(truth.size(), -1);
  std::vector<int> match_of_det(detections.size(), -1);
  for (const Pair& p : pairs) {
    if (match_of_truth[p.t] >= 0 || match_of_det[p.d] >= 0) continue;
    match_of_truth[p.t] = static_cast<int>(p.d);
    match_of_det[p.d] = static_cast<int>(p.t);
  }

  for (const TruthObject& t : truth) sc.true_cards += t.kind == ObjectKind::Card;
  for (std::size_t d = 0; d < detections.size(); ++d) {
    if (detections[d].shape != ShapeClass::Card) continue;
    ++sc.detected_cards;
    const int t = match_of_det[d];
    if (t < 0 || truth[t].kind != ObjectKind::Card) ++sc.false_greens;
    if (t >= 0 && truth[t].kind == ObjectKind::Disk) ++sc.disks_as_card;
  }

  std::vector<int> group_ids;
  for (const TruthObject& t : truth) group_ids.push_back(t.group);
  std::sort(group_ids.begin(), group_ids.end());
  group_ids.erase(std::unique(group_ids.begin(), group_ids.end()), group_ids.end());
  for (int g : group_ids) {
    int members = 0;
    bool ok = true;
    for (std::size_t t = 0; t < truth.size(); ++t) {
      if (truth[t].group != g) continue;
      ++members;
      const int d = match_of_truth[t];
      ok = ok && d >= 0 && detections[d].shape == expected_class(truth[t].kind);
    }
    ++sc.groups;
    sc.groups_correct += ok;
    if (members == 1) {
      ++sc.isolated_groups;
      sc.isolated_correct += ok;
    }
  }
  return sc;
}

double RecognitionResult::rate(Suit s) const {
  const int i = index_of(s);
  return total[i] ? double(correct[i]) / total[i] : 0.0;
}

double RecognitionResult::overall() const {
  int c = 0, t = 0;
  for (int i = 0; i < 4; ++i) {
    c += correct[i];
    t += total[i];
  }
  return t ? double(c) / t : 0.0;
}

RecognitionResult recognition_experiment(const TemplateSet& templates,
                                         const SemanticsConfig& cfg, std::uint64_t seed,
                                         int renders, double brightness, double noise_sigma) {
  if (renders < 1) throw std::invalid_argument("recognition_experiment: renders must be >= 1");
  RecognitionResult res;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gain(-brightness, brightness);
  for (Suit s : kAllSuits) {
    for (Rank r : kAllRanks) {
      const GrayImage clean = render_card(r, s);
      for (int k = 0; k < renders; ++k) {
        const Photometric jitter{gain(rng), noise_sigma, rng()};
        const int i = index_of(s);
        ++res.total[i];
        res.correct[i] += read_ok(apply_jitter(clean, jitter), r, s, templates, cfg);
      }
    }
  }
  return res;
}

int ScaleSweep::failures() const {
  int n = 0;
  for (const auto& row : yes)
    for (bool y : row) n += !y;
  return n;
}

ScaleSweep scale_sweep(const TemplateSet& templates, const SemanticsConfig& cfg, Suit suit) {
  ScaleSweep sweep;
  sweep.suit = suit;
  for (Rank r : kAllRanks)
    for (std::size_t j = 0; j < kSweepRatios.size(); ++j)
      sweep.yes[index_of(r)][j] =
          read_ok(render_card(r, suit, kSweepRatios[j]), r, suit, templates, cfg);
  return sweep;
}

EvalReport evaluate(const std::filesystem::path& scenes_dir, const TemplateSet& templates,
                    const PipelineConfig& cfg, std::uint64_t seed) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(scenes_dir)) {
    throw Error(ErrorKind::Io, "scene directory '" + scenes_dir.string() + "' does not exist");
  }
  std::vector<fs::path> images;
  for (const auto& entry : fs::directory_iterator(scenes_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") images.push_back(entry.path());
  std::sort(images.begin(), images.end());

  EvalReport report;
  for (const fs::path& img : images) {
    fs::path truth_path = img;
    truth_path.replace_extension(".truth");
    if (!fs::exists(truth_path)) {
      throw Error(ErrorKind::Io, "missing truth file '" + truth_path.string() + "'");
    }
    const std::vector<TruthObject> truth = read_truth(truth_path);
    const RgbImage scene = read_ppm(img);
    const auto t0 = std::chrono::steady_clock::now();
    const auto dets = detect(scene, templates, cfg.detector);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.scenes.push_back(score_scene(img.stem().string(), truth, dets, secs));
  }
  report.recognition = recognition_experiment(templates, cfg.semantics, seed);
  report.sweep = scale_sweep(templates, cfg.semantics);
  return report;
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << "# detection\n";
  int groups = 0, correct = 0;
  for (const SceneScore& s : report.scenes) {
    out << "scene=" << s.name << " true_cards=" << s.true_cards
        << " detected_cards=" << s.detected_cards << " false_greens=" << s.false_greens
        << " groups_correct=" << s.groups_correct << '/' << s.groups << '\n';
    groups += s.groups;
    correct += s.groups_correct;
  }
  out << "detection_total groups_correct=" << correct << '/' << groups << '\n';

  out << "# recognition\n";
  for (Suit s : kAllSuits) {
    const int i = index_of(s);
    out << "suit=" << to_string(s) << " correct=" << report.recognition.correct[i] << '/'
        << report.recognition.total[i] << " rate=" << fixed(report.recognition.rate(s), 4)
        << '\n';
  }
  out << "overall rate=" << fixed(report.recognition.overall(), 4) << '\n';

  out << "# scale sweep (" << to_string(report.sweep.suit) << ")\n";
  out << "rank";
  for (double r : kSweepRatios) out << ' ' << fixed(r, 1);
  out << '\n';
  for (Rank r : kAllRanks) {
    out << to_string(r);
    for (bool y : report.sweep.yes[index_of(r)]) out << ' ' << (y ? "Yes" : "No");
    out << '\n';
  }
}

}  // namespace cardvision
