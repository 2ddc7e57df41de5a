#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cardvision/detector.hpp"
#include "cardvision/semantics.hpp"

namespace cardvision {

struct PipelineConfig {
  DetectorConfig detector;
  SemanticsConfig semantics;
};

// Sets one knob by name, e.g. "detector.tau_edge" = "0.1". The kernel
// accepts "identity", "mean N" or "W H w0 w1 ...". Throws Error(Format) on an
// unknown key or unparsable value.
void set_option(PipelineConfig& cfg, const std::string& key, const std::string& value);

// `key = value` lines, '#' comments. Values not mentioned keep what `cfg`
// already holds.
void apply_config(PipelineConfig& cfg, std::istream& in);
void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path);

// Every knob in the same syntax, so the output can be fed back in.
void write_config(std::ostream& out, const PipelineConfig& cfg);

}  // namespace cardvision
