#include "optomag/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace optomag {

using nlohmann::json;

void RunConfig::validate() const {
  material.validate();
  ladder.validate();
  if (!(magnon_linewidth_ghz > 0.0))
    throw std::invalid_argument("magnon linewidth must be > 0");
}

std::string RunConfig::to_json() const {
  json j;
  j["material"] = {{"gamma_mhz_per_g", material.gamma_mhz_per_g},
                   {"four_pi_ms_g", material.four_pi_ms_g},
                   {"sphere_radius_mm", material.sphere_radius_mm},
                   {"kittel_frequency_ghz", material.kittel_frequency_ghz}};
  j["ladder"] = {{"reference_frequency_thz", ladder.reference_frequency_thz},
                 {"reference_index", ladder.reference_index},
                 {"fsr_ghz", ladder.fsr_ghz},
                 {"gb_ghz", ladder.gb_ghz},
                 {"quality_factor", ladder.quality_factor}};
  j["magnon_linewidth_ghz"] = magnon_linewidth_ghz;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunConfig c;
  if (j.contains("material")) {
    const auto& m = j.at("material");
    if (m.contains("gamma_mhz_per_g")) c.material.gamma_mhz_per_g = m["gamma_mhz_per_g"];
    if (m.contains("four_pi_ms_g")) c.material.four_pi_ms_g = m["four_pi_ms_g"];
    if (m.contains("sphere_radius_mm")) c.material.sphere_radius_mm = m["sphere_radius_mm"];
    if (m.contains("kittel_frequency_ghz"))
      c.material.kittel_frequency_ghz = m["kittel_frequency_ghz"];
  }
  if (j.contains("ladder")) {
    const auto& l = j.at("ladder");
    if (l.contains("reference_frequency_thz"))
      c.ladder.reference_frequency_thz = l["reference_frequency_thz"];
    if (l.contains("reference_index")) c.ladder.reference_index = l["reference_index"];
    if (l.contains("fsr_ghz")) c.ladder.fsr_ghz = l["fsr_ghz"];
    if (l.contains("gb_ghz")) c.ladder.gb_ghz = l["gb_ghz"];
    if (l.contains("quality_factor")) c.ladder.quality_factor = l["quality_factor"];
  }
  if (j.contains("magnon_linewidth_ghz"))
    c.magnon_linewidth_ghz = j["magnon_linewidth_ghz"];
  c.validate();
  return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json(text);
}

namespace {

void env_override(const char* name, double& target) {
  if (const char* v = std::getenv(name)) target = std::stod(v);
}

void env_override(const char* name, int& target) {
  if (const char* v = std::getenv(name)) target = std::stoi(v);
}

}  // namespace

void RunConfig::apply_env_overrides() {
  env_override("OPTOMAG_MATERIAL_GAMMA_MHZ_PER_G", material.gamma_mhz_per_g);
  env_override("OPTOMAG_MATERIAL_FOUR_PI_MS_G", material.four_pi_ms_g);
  env_override("OPTOMAG_MATERIAL_SPHERE_RADIUS_MM", material.sphere_radius_mm);
  env_override("OPTOMAG_MATERIAL_KITTEL_FREQUENCY_GHZ", material.kittel_frequency_ghz);
  env_override("OPTOMAG_LADDER_REFERENCE_FREQUENCY_THZ", ladder.reference_frequency_thz);
  env_override("OPTOMAG_LADDER_REFERENCE_INDEX", ladder.reference_index);
  env_override("OPTOMAG_LADDER_FSR_GHZ", ladder.fsr_ghz);
  env_override("OPTOMAG_LADDER_GB_GHZ", ladder.gb_ghz);
  env_override("OPTOMAG_LADDER_QUALITY_FACTOR", ladder.quality_factor);
  env_override("OPTOMAG_MAGNON_LINEWIDTH_GHZ", magnon_linewidth_ghz);
}

}  // namespace optomag
