#pragma once

#include <string>

#include "optomag/material.hpp"
#include "optomag/wgm.hpp"

namespace optomag {

/// Everything a reproducible run needs; defaults match the experimental
/// regime (7.1 GHz Kittel, 1940 G, 40 GHz FSR, -32 GHz GB, Q = 1e5).
struct RunConfig {
  MaterialConfig material;
  WGMLadderConfig ladder;
  double magnon_linewidth_ghz = 0.002;

  void validate() const;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  /// Apply OPTOMAG_* environment-variable overrides, e.g.
  /// OPTOMAG_MATERIAL_KITTEL_FREQUENCY_GHZ or OPTOMAG_LADDER_FSR_GHZ.
  void apply_env_overrides();
};

}  // namespace optomag
