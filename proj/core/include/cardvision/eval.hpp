#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cardvision/config.hpp"
#include "cardvision/synth.hpp"

namespace cardvision {

double box_iou(const Box& a, const Box& b);

struct SceneScore {
  std::string name;
  int true_cards = 0;
  int detected_cards = 0;
  int false_greens = 0;     // CARD detections not matching a true card
  int groups = 0;
  int groups_correct = 0;
  int isolated_groups = 0;  // single-object groups
  int isolated_correct = 0;
  int disks_as_card = 0;
  double seconds = 0.0;
};

// Greedy one-to-one matching by bbox IoU >= 0.5. A truth group counts as
// correct when each of its members is matched to a distinct detection of
// the expected class.
SceneScore score_scene(const std::string& name, const std::vector<TruthObject>& truth,
                       const std::vector<Detection>& detections, double seconds = 0.0);

struct RecognitionResult {
  std::array<int, 4> correct{};
  std::array<int, 4> total{};

  double rate(Suit s) const;
  double overall() const;
};

// Every card of the deck rendered `renders` times with seeded jitter:
// brightness gain uniform in [-brightness, +brightness], Gaussian noise of
// `noise_sigma`. A render counts when both rank and suit are right.
RecognitionResult recognition_experiment(const TemplateSet& templates,
                                         const SemanticsConfig& cfg, std::uint64_t seed,
                                         int renders = 10, double brightness = 0.2,
                                         double noise_sigma = 4.0);

inline constexpr std::array<double, 8> kSweepRatios = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3};

struct ScaleSweep {
  Suit suit = Suit::Diamond;
  std::array<std::array<bool, kSweepRatios.size()>, 13> yes{};  // [rank][ratio]

  int failures() const;
};

ScaleSweep scale_sweep(const TemplateSet& templates, const SemanticsConfig& cfg,
                       Suit suit = Suit::Diamond);

struct EvalReport {
  std::vector<SceneScore> scenes;
  RecognitionResult recognition;
  ScaleSweep sweep;
};

// Scores every <name>.ppm in `scenes_dir` against <name>.truth (sorted by
// name), then runs the recognition experiment and the diamond sweep.
// Throws Error(Io) when a truth file is missing.
EvalReport evaluate(const std::filesystem::path& scenes_dir, const TemplateSet& templates,
                    const PipelineConfig& cfg, std::uint64_t seed);

void write_eval_report(std::ostream& out, const EvalReport& report);

}  // namespace cardvision
