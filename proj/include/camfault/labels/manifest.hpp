// Copyright 2026 The camfault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "camfault/core/camera.hpp"
#include "camfault/core/png_io.hpp"
#include "camfault/inject/pipeline.hpp"
#include "camfault/scene/variables.hpp"
#include "camfault/version.hpp"

namespace camfault::labels {

using json = nlohmann::ordered_json;

/// Raised on malformed manifests; the message names the offending field.
class ManifestError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
T require(const json& j, const std::string& field) {
  if (!j.contains(field)) throw ManifestError("manifest field '" + field + "' is missing");
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("manifest field '" + field + "' is malformed: " + e.what());
  }
}

template <typename T>
T require_at(const json& j, const std::string& context, const std::string& field) {
  if (!j.contains(field))
    throw ManifestError("manifest field '" + context + "." + field + "' is missing");
  try {
    return j.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("manifest field '" + context + "." + field + "' is malformed: " +
                        e.what());
  }
}

}  // namespace detail

/// How the clean background of a sample came to be.
struct BackgroundRef {
  std::string mode = "procedural";  // "procedural" | "import"
  std::string source;               // import source path; empty when procedural

  bool operator==(const BackgroundRef&) const = default;
};

/// Full provenance record of one generated sample: seeds, stage, the
/// sampled scenario variables, every injected fault parameter, and the
/// relative paths of the emitted files. Sufficient to regenerate the
/// sample bit-exactly.
struct SampleManifest {
  std::string generator_name = kGeneratorName;
  std::string generator_version = kGeneratorVersion;
  std::string rng_algorithm = kRngAlgorithm;

  int sample_index = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t sub_seed = 0;
  scene::Stage stage = scene::Stage::kSunFacing;
  CameraModel camera;
  scene::DatasetVariables variables;
  scene::SunPixel sun_pixel;
  BackgroundRef background;
  inject::FaultFlags flags;
  inject::ParamBounds bounds;  // effective sampling ranges of the run
  inject::FaultRecord record;
  std::map<std::string, std::string> files;
  json extras = json::object();  // unknown top-level fields, preserved on read

  bool operator==(const SampleManifest& o) const {
    return generator_name == o.generator_name && generator_version == o.generator_version &&
           rng_algorithm == o.rng_algorithm && sample_index == o.sample_index &&
           master_seed == o.master_seed && sub_seed == o.sub_seed && stage == o.stage &&
           camera == o.camera && variables == o.variables && sun_pixel == o.sun_pixel &&
           background == o.background && flags == o.flags && bounds_equal(bounds, o.bounds) &&
           record == o.record && files == o.files && extras == o.extras;
  }

  static bool bounds_equal(const inject::ParamBounds& a, const inject::ParamBounds& b) {
    auto eq_i = [](const inject::IntRange& x, const inject::IntRange& y) {
      return x.lo == y.lo && x.hi == y.hi;
    };
    auto eq_r = [](const inject::RealRange& x, const inject::RealRange& y) {
      return x.lo == y.lo && x.hi == y.hi;
    };
    return eq_i(a.dust_grains, b.dust_grains) && eq_i(a.broken_pixels, b.broken_pixels) &&
           eq_i(a.pixel_brightness, b.pixel_brightness) &&
           eq_i(a.broken_lines, b.broken_lines) && eq_i(a.flare_count, b.flare_count) &&
           eq_r(a.flare_position, b.flare_position) && eq_r(a.flare_radius, b.flare_radius) &&
           eq_r(a.flare_brightness, b.flare_brightness) &&
           eq_i(a.vignette_e0, b.vignette_e0) && eq_i(a.blur_size, b.blur_size);
  }
};

// --- serialization ---------------------------------------------------------

namespace detail {

inline json flags_to_json(const inject::FaultFlags& f) {
  json j;
  j["dust"] = f.dust;
  j["broken_pixels"] = f.broken_pixels;
  j["broken_lines"] = f.broken_lines;
  j["vignetting"] = f.vignetting;
  j["optics_degradation"] = f.optics_degradation;
  j["straylight"] = f.straylight;
  return j;
}

inline inject::FaultFlags flags_from_json(const json& j) {
  inject::FaultFlags f;
  f.dust = require_at<bool>(j, "flags", "dust");
  f.broken_pixels = require_at<bool>(j, "flags", "broken_pixels");
  f.broken_lines = require_at<bool>(j, "flags", "broken_lines");
  f.vignetting = require_at<bool>(j, "flags", "vignetting");
  f.optics_degradation = require_at<bool>(j, "flags", "optics_degradation");
  f.straylight = require_at<bool>(j, "flags", "straylight");
  return f;
}

inline json record_to_json(const inject::FaultRecord& r) {
  json j = json::object();
  if (r.dust) {
    json grains = json::array();
    for (const auto& g : r.dust->grains) {
      grains.push_back({{"peak", g.peak},
                        {"sigma_xx", g.sigma_xx},
                        {"sigma_yy", g.sigma_yy},
                        {"sigma_xy", g.sigma_xy}});
    }
    j["dust"] = {{"count", r.dust->count()}, {"grains", std::move(grains)}};
  }
  if (r.broken_pixels) {
    json pixels = json::array();
    for (const auto& p : r.broken_pixels->pixels)
      pixels.push_back({{"brightness", int(p.brightness)},
                        {"line_brightness", int(p.line_brightness)}});
    j["broken_pixels"] = {{"sensor", inject::sensor_name(r.broken_pixels->sensor)},
                          {"count", r.broken_pixels->count()},
                          {"line_direction", inject::direction_name(r.broken_pixels->direction)},
                          {"pixels", std::move(pixels)}};
  }
  if (r.broken_lines) {
    json lines = json::array();
    for (const auto& l : r.broken_lines->lines)
      lines.push_back({{"orientation", inject::orientation_name(l.orientation)},
                       {"index", l.index},
                       {"polarity", int(l.polarity)}});
    j["broken_lines"] = {{"sensor", inject::sensor_name(r.broken_lines->sensor)},
                         {"count", r.broken_lines->count()},
                         {"lines", std::move(lines)}};
  }
  if (r.straylight) {
    json flares = json::array();
    for (const auto& fl : r.straylight->flares)
      flares.push_back({{"index", fl.index},
                        {"position", fl.position},
                        {"radius", fl.radius},
                        {"brightness", fl.brightness}});
    json glare = {{"injected", r.straylight->glare.injected}};
    if (r.straylight->glare.injected) {
      glare["index"] = r.straylight->glare.index;
      glare["radius"] = r.straylight->glare.radius;
      glare["brightness"] = r.straylight->glare.brightness;
    }
    j["straylight"] = {{"count", r.straylight->count()},
                       {"flares", std::move(flares)},
                       {"glare", std::move(glare)},
                       {"degenerate_direction", r.straylight->degenerate_direction},
                       {"degenerate_angle", r.straylight->degenerate_angle}};
  }
  if (r.vignette_e0) j["vignetting"] = {{"e0", *r.vignette_e0}};
  if (r.blur_size) j["optics_degradation"] = {{"kernel_size", *r.blur_size}};
  return j;
}

inline inject::FaultRecord record_from_json(const json& j) {
  inject::FaultRecord r;
  if (j.contains("dust")) {
    const json& d = j.at("dust");
    inject::DustParams dust;
    for (const auto& g : require_at<json>(d, "faults.dust", "grains")) {
      tex::GrainParams gp;
      gp.peak = require_at<double>(g, "faults.dust.grains[]", "peak");
      gp.sigma_xx = require_at<double>(g, "faults.dust.grains[]", "sigma_xx");
      gp.sigma_yy = require_at<double>(g, "faults.dust.grains[]", "sigma_yy");
      gp.sigma_xy = require_at<double>(g, "faults.dust.grains[]", "sigma_xy");
      dust.grains.push_back(gp);
    }
    if (require_at<int>(d, "faults.dust", "count") != dust.count())
      throw ManifestError("manifest field 'faults.dust.count' disagrees with the grain list");
    r.dust = std::move(dust);
  }
  if (j.contains("broken_pixels")) {
    const json& b = j.at("broken_pixels");
    inject::BrokenPixelParams bp;
    bp.sensor = inject::sensor_from_name(
        require_at<std::string>(b, "faults.broken_pixels", "sensor"));
    bp.direction = inject::direction_from_name(
        require_at<std::string>(b, "faults.broken_pixels", "line_direction"));
    for (const auto& p : require_at<json>(b, "faults.broken_pixels", "pixels")) {
      inject::BrokenPixel px;
      px.brightness = static_cast<std::uint8_t>(
          require_at<int>(p, "faults.broken_pixels.pixels[]", "brightness"));
      px.line_brightness = static_cast<std::uint8_t>(
          require_at<int>(p, "faults.broken_pixels.pixels[]", "line_brightness"));
      bp.pixels.push_back(px);
    }
    if (require_at<int>(b, "faults.broken_pixels", "count") != bp.count())
      throw ManifestError(
          "manifest field 'faults.broken_pixels.count' disagrees with the pixel list");
    r.broken_pixels = std::move(bp);
  }
  if (j.contains("broken_lines")) {
    const json& b = j.at("broken_lines");
    inject::BrokenLineParams bl;
    bl.sensor =
        inject::sensor_from_name(require_at<std::string>(b, "faults.broken_lines", "sensor"));
    for (const auto& l : require_at<json>(b, "faults.broken_lines", "lines")) {
      inject::BrokenLine line;
      line.orientation = inject::orientation_from_name(
          require_at<std::string>(l, "faults.broken_lines.lines[]", "orientation"));
      line.index = require_at<int>(l, "faults.broken_lines.lines[]", "index");
      line.polarity = static_cast<std::uint8_t>(
          require_at<int>(l, "faults.broken_lines.lines[]", "polarity"));
      bl.lines.push_back(line);
    }
    if (require_at<int>(b, "faults.broken_lines", "count") != bl.count())
      throw ManifestError(
          "manifest field 'faults.broken_lines.count' disagrees with the line list");
    r.broken_lines = std::move(bl);
  }
  if (j.contains("straylight")) {
    const json& s = j.at("straylight");
    inject::StraylightParams sl;
    for (const auto& f : require_at<json>(s, "faults.straylight", "flares")) {
      inject::FlareInstance fl;
      fl.index = require_at<int>(f, "faults.straylight.flares[]", "index");
      fl.position = require_at<double>(f, "faults.straylight.flares[]", "position");
      fl.radius = require_at<double>(f, "faults.straylight.flares[]", "radius");
      fl.brightness = require_at<double>(f, "faults.straylight.flares[]", "brightness");
      sl.flares.push_back(fl);
    }
    const json& g = s.contains("glare") ? s.at("glare") : json::object();
    sl.glare.injected = require_at<bool>(g, "faults.straylight.glare", "injected");
    if (sl.glare.injected) {
      sl.glare.index = require_at<int>(g, "faults.straylight.glare", "index");
      sl.glare.radius = require_at<double>(g, "faults.straylight.glare", "radius");
      sl.glare.brightness = require_at<double>(g, "faults.straylight.glare", "brightness");
    }
    sl.degenerate_direction = require_at<bool>(s, "faults.straylight", "degenerate_direction");
    sl.degenerate_angle = require_at<double>(s, "faults.straylight", "degenerate_angle");
    r.straylight = std::move(sl);
  }
  if (j.contains("vignetting"))
    r.vignette_e0 = require_at<int>(j.at("vignetting"), "faults.vignetting", "e0");
  if (j.contains("optics_degradation"))
    r.blur_size =
        require_at<int>(j.at("optics_degradation"), "faults.optics_degradation", "kernel_size");
  return r;
}

inline json bounds_to_json(const inject::ParamBounds& b) {
  json j;
  j["dust_grains"] = {b.dust_grains.lo, b.dust_grains.hi};
  j["broken_pixels"] = {b.broken_pixels.lo, b.broken_pixels.hi};
  j["pixel_brightness"] = {b.pixel_brightness.lo, b.pixel_brightness.hi};
  j["broken_lines"] = {b.broken_lines.lo, b.broken_lines.hi};
  j["flare_count"] = {b.flare_count.lo, b.flare_count.hi};
  j["flare_position"] = {b.flare_position.lo, b.flare_position.hi};
  j["flare_radius"] = {b.flare_radius.lo, b.flare_radius.hi};
  j["flare_brightness"] = {b.flare_brightness.lo, b.flare_brightness.hi};
  j["vignette_e0"] = {b.vignette_e0.lo, b.vignette_e0.hi};
  j["blur_size"] = {b.blur_size.lo, b.blur_size.hi};
  return j;
}

inline inject::ParamBounds bounds_from_json(const json& j) {
  inject::ParamBounds b;
  auto read_i = [&](const char* key, inject::IntRange& out) {
    const auto a = require_at<std::array<int, 2>>(j, "ranges", key);
    out = {a[0], a[1]};
  };
  auto read_r = [&](const char* key, inject::RealRange& out) {
    const auto a = require_at<std::array<double, 2>>(j, "ranges", key);
    out = {a[0], a[1]};
  };
  read_i("dust_grains", b.dust_grains);
  read_i("broken_pixels", b.broken_pixels);
  read_i("pixel_brightness", b.pixel_brightness);
  read_i("broken_lines", b.broken_lines);
  read_i("flare_count", b.flare_count);
  read_r("flare_position", b.flare_position);
  read_r("flare_radius", b.flare_radius);
  read_r("flare_brightness", b.flare_brightness);
  read_i("vignette_e0", b.vignette_e0);
  read_i("blur_size", b.blur_size);
  return b;
}

inline const char* const kKnownTopLevel[] = {
    "generator", "sample_index", "master_seed", "sub_seed",  "stage",  "camera",
    "variables", "sun_pixel",    "background",  "flags",     "ranges", "faults",
    "files"};

}  // namespace detail

inline json to_json(const SampleManifest& m) {
  json j;
  j["generator"] = {{"name", m.generator_name},
                    {"version", m.generator_version},
                    {"rng", m.rng_algorithm}};
  j["sample_index"] = m.sample_index;
  j["master_seed"] = m.master_seed;
  j["sub_seed"] = m.sub_seed;
  j["stage"] = scene::stage_name(m.stage);
  j["camera"] = {{"fov_deg", m.camera.fov_deg},
                 {"width", m.camera.width},
                 {"height", m.camera.height}};
  j["variables"] = {{"sun_azimuth", m.variables.sun_azimuth},
                    {"sun_elevation", m.variables.sun_elevation},
                    {"roll", m.variables.roll},
                    {"pitch", m.variables.pitch},
                    {"yaw", m.variables.yaw},
                    {"position", m.variables.position}};
  j["sun_pixel"] = {{"u", m.sun_pixel.u},
                    {"v", m.sun_pixel.v},
                    {"in_fov", m.sun_pixel.in_fov},
                    {"behind", m.sun_pixel.behind}};
  j["background"] = {{"mode", m.background.mode}, {"source", m.background.source}};
  j["flags"] = detail::flags_to_json(m.flags);
  j["ranges"] = detail::bounds_to_json(m.bounds);
  j["faults"] = detail::record_to_json(m.record);
  j["files"] = m.files;
  for (const auto& [key, value] : m.extras.items()) j[key] = value;
  return j;
}

inline SampleManifest manifest_from_json(const json& j) {
  SampleManifest m;
  const json gen = detail::require<json>(j, "generator");
  m.generator_name = detail::require_at<std::string>(gen, "generator", "name");
  m.generator_version = detail::require_at<std::string>(gen, "generator", "version");
  m.rng_algorithm = detail::require_at<std::string>(gen, "generator", "rng");

  m.sample_index = detail::require<int>(j, "sample_index");
  m.master_seed = detail::require<std::uint64_t>(j, "master_seed");
  m.sub_seed = detail::require<std::uint64_t>(j, "sub_seed");

  const auto stage = detail::require<std::string>(j, "stage");
  if (stage == "sun_facing") m.stage = scene::Stage::kSunFacing;
  else if (stage == "sun_averted") m.stage = scene::Stage::kSunAverted;
  else throw ManifestError("manifest field 'stage' has unknown value: " + stage);

  const json cam = detail::require<json>(j, "camera");
  m.camera.fov_deg = detail::require_at<double>(cam, "camera", "fov_deg");
  m.camera.width = detail::require_at<int>(cam, "camera", "width");
  m.camera.height = detail::require_at<int>(cam, "camera", "height");

  const json vars = detail::require<json>(j, "variables");
  m.variables.sun_azimuth = detail::require_at<double>(vars, "variables", "sun_azimuth");
  m.variables.sun_elevation = detail::require_at<double>(vars, "variables", "sun_elevation");
  m.variables.roll = detail::require_at<double>(vars, "variables", "roll");
  m.variables.pitch = detail::require_at<double>(vars, "variables", "pitch");
  m.variables.yaw = detail::require_at<double>(vars, "variables", "yaw");
  m.variables.position = detail::require_at<std::array<double, 3>>(vars, "variables", "position");
  m.variables.stage = m.stage;

  const json sp = detail::require<json>(j, "sun_pixel");
  m.sun_pixel.u = detail::require_at<double>(sp, "sun_pixel", "u");
  m.sun_pixel.v = detail::require_at<double>(sp, "sun_pixel", "v");
  m.sun_pixel.in_fov = detail::require_at<bool>(sp, "sun_pixel", "in_fov");
  m.sun_pixel.behind = detail::require_at<bool>(sp, "sun_pixel", "behind");

  const json bg = detail::require<json>(j, "background");
  m.background.mode = detail::require_at<std::string>(bg, "background", "mode");
  m.background.source = detail::require_at<std::string>(bg, "background", "source");

  m.flags = detail::flags_from_json(detail::require<json>(j, "flags"));
  m.bounds = detail::bounds_from_json(detail::require<json>(j, "ranges"));
  m.record = detail::record_from_json(detail::require<json>(j, "faults"));
  m.files = detail::require<std::map<std::string, std::string>>(j, "files");

  m.extras = json::object();
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : detail::kKnownTopLevel)
      if (key == k) { known = true; break; }
    if (!known) m.extras[key] = value;
  }
  return m;
}

inline void write_manifest(const SampleManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << to_json(m).dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest: " + path.string());
}

inline SampleManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestError("manifest parse error in " + path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace camfault::labels
