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

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "camfault/core/camera.hpp"
#include "camfault/core/image.hpp"
#include "camfault/core/png_io.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/inject/matrix.hpp"
#include "camfault/inject/pipeline.hpp"
#include "camfault/labels/manifest.hpp"
#include "camfault/labels/masks.hpp"
#include "camfault/scene/background.hpp"
#include "camfault/scene/variables.hpp"
#include "camfault/version.hpp"

namespace camfault::run {

/// Raised on invalid user input (flags, config files); maps to exit code 1.
class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Sub-stream indices hung off each sample's sub-seed, plus the run-level
// stream for the injection matrix.
inline constexpr std::uint64_t kStreamVars = 1;
inline constexpr std::uint64_t kStreamBackground = 2;
inline constexpr std::uint64_t kStreamInject = 3;
inline constexpr std::uint64_t kStreamMatrix = 1000;

struct RunConfig {
  int count = 10;
  double fraction = 0.5;
  std::uint64_t seed = 1;
  CameraModel camera{65.0, 1024, 1024};
  std::array<bool, inject::kFaultClassCount> enabled = {true, true, true, true, true, true};
  std::optional<int> straylight_override;
  inject::ParamBounds bounds;
  bool unsafe_ranges = false;
  std::string background_mode = "procedural";  // "procedural" | "import"
  std::vector<std::filesystem::path> import_images;
  std::vector<std::filesystem::path> import_suns;
  int workers = 1;
  std::filesystem::path out_dir;
};

namespace detail {

inline void check_range_override(const inject::IntRange& value, const inject::IntRange& table,
                                 bool unsafe_ok, const char* field) {
  if (value.lo > value.hi)
    throw UsageError(std::string("config field '") + field + "' has lo > hi");
  if (!value.within(table) && !unsafe_ok)
    throw UsageError(std::string("config field '") + field +
                     "' widens the dataset bounds; pass unsafe_ranges to allow");
}

inline void check_range_override(const inject::RealRange& value,
                                 const inject::RealRange& table, bool unsafe_ok,
                                 const char* field) {
  if (value.lo > value.hi)
    throw UsageError(std::string("config field '") + field + "' has lo > hi");
  if (!value.within(table) && !unsafe_ok)
    throw UsageError(std::string("config field '") + field +
                     "' widens the dataset bounds; pass unsafe_ranges to allow");
}

}  // namespace detail

inline void validate_run_config(const RunConfig& cfg) {
  if (cfg.count < 0) throw UsageError("count must be >= 0");
  if (!(cfg.fraction >= 0.0 && cfg.fraction <= 1.0))
    throw UsageError("faulty_fraction must lie in [0, 1]");
  if (cfg.workers < 1) throw UsageError("workers must be >= 1");
  try {
    cfg.camera.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (cfg.straylight_override &&
      (*cfg.straylight_override < 0 || *cfg.straylight_override > cfg.count))
    throw UsageError("straylight_count must lie in [0, count]");

  const inject::ParamBounds table;
  detail::check_range_override(cfg.bounds.dust_grains, table.dust_grains, cfg.unsafe_ranges,
                               "ranges.dust_grains");
  detail::check_range_override(cfg.bounds.broken_pixels, table.broken_pixels,
                               cfg.unsafe_ranges, "ranges.broken_pixels");
  detail::check_range_override(cfg.bounds.pixel_brightness, table.pixel_brightness,
                               cfg.unsafe_ranges, "ranges.pixel_brightness");
  detail::check_range_override(cfg.bounds.broken_lines, table.broken_lines, cfg.unsafe_ranges,
                               "ranges.broken_lines");
  detail::check_range_override(cfg.bounds.flare_count, table.flare_count, cfg.unsafe_ranges,
                               "ranges.flare_count");
  detail::check_range_override(cfg.bounds.flare_position, table.flare_position,
                               cfg.unsafe_ranges, "ranges.flare_position");
  detail::check_range_override(cfg.bounds.flare_radius, table.flare_radius, cfg.unsafe_ranges,
                               "ranges.flare_radius");
  detail::check_range_override(cfg.bounds.flare_brightness, table.flare_brightness,
                               cfg.unsafe_ranges, "ranges.flare_brightness");
  detail::check_range_override(cfg.bounds.vignette_e0, table.vignette_e0, cfg.unsafe_ranges,
                               "ranges.vignette_e0");
  detail::check_range_override(cfg.bounds.blur_size, table.blur_size, cfg.unsafe_ranges,
                               "ranges.blur_size");

  if (cfg.background_mode == "import") {
    if (static_cast<int>(cfg.import_images.size()) < cfg.count)
      throw UsageError("background.images must list at least `count` files");
    if (cfg.import_suns.size() != cfg.import_images.size())
      throw UsageError("background.suns must pair one sidecar per image");
  } else if (cfg.background_mode != "procedural") {
    throw UsageError("background.mode must be 'procedural' or 'import'");
  }
}

/// Loads a JSON run configuration; fields are optional and overlay the
/// given base config.
inline RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config parse error in " + path.string() + ": " + e.what());
  }

  auto int_range = [](const nlohmann::json& a, const char* field) {
    if (!a.is_array() || a.size() != 2)
      throw UsageError(std::string("config field '") + field + "' must be [lo, hi]");
    return inject::IntRange{a[0].get<int>(), a[1].get<int>()};
  };
  auto real_range = [](const nlohmann::json& a, const char* field) {
    if (!a.is_array() || a.size() != 2)
      throw UsageError(std::string("config field '") + field + "' must be [lo, hi]");
    return inject::RealRange{a[0].get<double>(), a[1].get<double>()};
  };

  try {
    if (j.contains("count")) base.count = j.at("count").get<int>();
    if (j.contains("fraction")) base.fraction = j.at("fraction").get<double>();
    if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("camera")) {
      const auto& c = j.at("camera");
      if (c.contains("fov_deg")) base.camera.fov_deg = c.at("fov_deg").get<double>();
      if (c.contains("width")) base.camera.width = c.at("width").get<int>();
      if (c.contains("height")) base.camera.height = c.at("height").get<int>();
    }
    if (j.contains("classes")) {
      for (const auto& [name, value] : j.at("classes").items())
        base.enabled[static_cast<int>(inject::fault_class_from_name(name))] =
            value.get<bool>();
    }
    if (j.contains("straylight_count"))
      base.straylight_override = j.at("straylight_count").get<int>();
    if (j.contains("unsafe_ranges")) base.unsafe_ranges = j.at("unsafe_ranges").get<bool>();
    if (j.contains("ranges")) {
      const auto& r = j.at("ranges");
      if (r.contains("dust_grains"))
        base.bounds.dust_grains = int_range(r.at("dust_grains"), "ranges.dust_grains");
      if (r.contains("broken_pixels"))
        base.bounds.broken_pixels = int_range(r.at("broken_pixels"), "ranges.broken_pixels");
      if (r.contains("pixel_brightness"))
        base.bounds.pixel_brightness =
            int_range(r.at("pixel_brightness"), "ranges.pixel_brightness");
      if (r.contains("broken_lines"))
        base.bounds.broken_lines = int_range(r.at("broken_lines"), "ranges.broken_lines");
      if (r.contains("flare_count"))
        base.bounds.flare_count = int_range(r.at("flare_count"), "ranges.flare_count");
      if (r.contains("flare_position"))
        base.bounds.flare_position =
            real_range(r.at("flare_position"), "ranges.flare_position");
      if (r.contains("flare_radius"))
        base.bounds.flare_radius = real_range(r.at("flare_radius"), "ranges.flare_radius");
      if (r.contains("flare_brightness"))
        base.bounds.flare_brightness =
            real_range(r.at("flare_brightness"), "ranges.flare_brightness");
      if (r.contains("vignette_e0"))
        base.bounds.vignette_e0 = int_range(r.at("vignette_e0"), "ranges.vignette_e0");
      if (r.contains("blur_size"))
        base.bounds.blur_size = int_range(r.at("blur_size"), "ranges.blur_size");
    }
    if (j.contains("background")) {
      const auto& b = j.at("background");
      if (b.contains("mode")) base.background_mode = b.at("mode").get<std::string>();
      if (b.contains("images")) {
        base.import_images.clear();
        for (const auto& p : b.at("images"))
          base.import_images.emplace_back(p.get<std::string>());
      }
      if (b.contains("suns")) {
        base.import_suns.clear();
        for (const auto& p : b.at("suns")) base.import_suns.emplace_back(p.get<std::string>());
      }
    }
    if (j.contains("workers")) base.workers = j.at("workers").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config field error in " + path.string() + ": " + e.what());
  }
  return base;
}

/// Sidecar format for imported backgrounds: either `behind` or the Sun
/// pixel coordinates `u v` on one line (values may fall outside the raster).
inline scene::SunPixel read_sun_sidecar(const std::filesystem::path& path, int width,
                                        int height) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sun sidecar: " + path.string());
  std::string token;
  in >> token;
  scene::SunPixel px;
  if (token == "behind") {
    px.behind = true;
    return px;
  }
  std::istringstream first(token);
  if (!(first >> px.u) || !(in >> px.v))
    throw UsageError("sun sidecar must contain 'behind' or two numbers: " + path.string());
  px.in_fov = px.u >= 0 && px.u < width && px.v >= 0 && px.v < height;
  return px;
}

struct SampleOutputs {
  inject::FaultySample sample;
  labels::SampleManifest manifest;
};

namespace detail {

inline std::string sample_dir_name(int index) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%06d", index);
  return buf;
}

inline std::map<std::string, std::string> standard_file_map(bool has_flare_free) {
  std::map<std::string, std::string> files;
  files["image"] = "image.png";
  if (has_flare_free) files["flare_free"] = "flare_free.png";
  for (int c = 0; c < inject::kFaultClassCount; ++c) {
    const std::string name = inject::fault_class_name(static_cast<inject::FaultClass>(c));
    files["mask_" + name] = "mask_" + name + ".png";
  }
  files["mask_all"] = "mask_all.png";
  return files;
}

}  // namespace detail

/// Generates one sample of a batch run: scenario variables, background,
/// fault pipeline, manifest. Pure given the config (import mode reads the
/// listed source files).
inline SampleOutputs produce_sample(const RunConfig& cfg, int index, scene::Stage stage,
                                    const inject::FaultFlags& flags,
                                    const inject::PipelineOverrides& overrides = {}) {
  const std::uint64_t sub_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(index));

  SeededRng vars_rng(mix_seed(sub_seed, kStreamVars));
  const scene::DatasetVariables vars = scene::sample_variables(stage, cfg.camera, vars_rng);

  ImageRGBI background;
  scene::SunPixel sun;
  labels::BackgroundRef bg_ref;
  CameraModel camera = cfg.camera;
  if (cfg.background_mode == "import") {
    const auto& img_path = cfg.import_images.at(index);
    background = read_rgbi_png(img_path);
    camera = CameraModel(cfg.camera.fov_deg, background.width(), background.height());
    sun = read_sun_sidecar(cfg.import_suns.at(index), background.width(), background.height());
    bg_ref.mode = "import";
    bg_ref.source = img_path.string();
  } else {
    SeededRng bg_rng(mix_seed(sub_seed, kStreamBackground));
    auto rendered = scene::render_background(vars, cfg.camera, bg_rng);
    background = std::move(rendered.first);
    sun = rendered.second;
  }

  SampleOutputs out;
  out.sample = inject::apply_pipeline(background, sun, flags,
                                      mix_seed(sub_seed, kStreamInject), camera.fov_deg,
                                      cfg.bounds, overrides);

  labels::SampleManifest& m = out.manifest;
  m.sample_index = index;
  m.master_seed = cfg.seed;
  m.sub_seed = sub_seed;
  m.stage = stage;
  m.camera = camera;
  m.variables = vars;
  m.sun_pixel = sun;
  m.background = bg_ref;
  m.flags = flags;
  m.bounds = cfg.bounds;
  m.record = out.sample.record;
  m.files = detail::standard_file_map(out.sample.flare_free.has_value());
  return out;
}

/// Replays a sample from its manifest alone; with the recorded seeds,
/// sampling ranges and parameter record forced, every stream draw
/// reproduces bit-exactly.
inline SampleOutputs regenerate_from_manifest(const labels::SampleManifest& m) {
  if (m.background.mode == "import") {
    // Imported backgrounds replay from the recorded source and Sun pixel.
    const std::uint64_t sub_seed = mix_seed(m.master_seed, m.sample_index);
    ImageRGBI background = read_rgbi_png(m.background.source);
    SampleOutputs out;
    out.sample = inject::apply_pipeline(background, m.sun_pixel, m.flags,
                                        mix_seed(sub_seed, kStreamInject), m.camera.fov_deg,
                                        m.bounds, inject::overrides_from_record(m.record));
    out.manifest = m;
    out.manifest.record = out.sample.record;
    return out;
  }

  RunConfig cfg;
  cfg.seed = m.master_seed;
  cfg.camera = m.camera;
  cfg.bounds = m.bounds;
  return produce_sample(cfg, m.sample_index, m.stage, m.flags,
                        inject::overrides_from_record(m.record));
}

/// Writes one sample's rasters and manifest into `dir` using the standard
/// layout (image.png, optional flare_free.png, per-class masks, mask_all,
/// manifest.json).
inline void write_sample_files(const SampleOutputs& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_rgbi_png(out.sample.faulty, dir / "image.png");
  if (out.sample.flare_free)
    write_rgbi_png(*out.sample.flare_free, dir / "flare_free.png");
  for (int c = 0; c < inject::kFaultClassCount; ++c) {
    const std::string name = inject::fault_class_name(static_cast<inject::FaultClass>(c));
    write_mask_png(out.sample.masks[c], dir / ("mask_" + name + ".png"));
  }
  write_mask_png(labels::combined_mask(out.sample.masks), dir / "mask_all.png");
  labels::write_manifest(out.manifest, dir / "manifest.json");
}

/// Single-image injection onto user-supplied imagery.
struct InjectRequest {
  std::filesystem::path image_path;
  std::optional<scene::SunPixel> sun;
  inject::FaultFlags flags;
  inject::PipelineOverrides overrides;
  std::uint64_t seed = 1;
  double fov_deg = 65.0;
  inject::ParamBounds bounds;
};

inline SampleOutputs inject_image(const InjectRequest& req) {
  if (req.flags.straylight && !req.sun)
    throw UsageError("straylight requires --sun coordinates");
  ImageRGBI img = read_rgbi_png(req.image_path);

  scene::SunPixel sun;
  if (req.sun) {
    sun = *req.sun;
    sun.in_fov = !sun.behind && sun.u >= 0 && sun.u < img.width() && sun.v >= 0 &&
                 sun.v < img.height();
  }

  const std::uint64_t sub_seed = mix_seed(req.seed, 0);
  SampleOutputs out;
  out.sample = inject::apply_pipeline(img, sun, req.flags, mix_seed(sub_seed, kStreamInject),
                                      req.fov_deg, req.bounds, req.overrides);

  labels::SampleManifest& m = out.manifest;
  m.sample_index = 0;
  m.master_seed = req.seed;
  m.sub_seed = sub_seed;
  m.stage = req.flags.straylight ? scene::Stage::kSunFacing : scene::Stage::kSunAverted;
  m.camera = CameraModel(req.fov_deg, img.width(), img.height());
  m.variables = {};
  m.variables.stage = m.stage;
  m.sun_pixel = sun;
  m.background = {"import", req.image_path.string()};
  m.flags = req.flags;
  m.bounds = req.bounds;
  m.record = out.sample.record;
  m.files = detail::standard_file_map(out.sample.flare_free.has_value());
  return out;
}

struct RunSummary {
  int n_total = 0;
  int n_straylight = 0;
  std::array<int, inject::kFaultClassCount> class_counts = {};
  double seconds = 0.0;
  std::string out_dir;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n_total"] = n_total;
    j["n_straylight"] = n_straylight;
    nlohmann::ordered_json counts;
    for (int c = 0; c < inject::kFaultClassCount; ++c)
      counts[inject::fault_class_name(static_cast<inject::FaultClass>(c))] = class_counts[c];
    j["class_counts"] = std::move(counts);
    j["seconds"] = seconds;
    j["out_dir"] = out_dir;
    return j;
  }
};

/// Runs a full batch generation: stratified plan, injection matrix, then
/// every sample through the pipeline onto disk. Deterministic in
/// (config, seed) and invariant in the worker count, because each sample
/// owns a derived sub-seed and a private output directory.
inline RunSummary generate_run(const RunConfig& cfg) {
  validate_run_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + cfg.out_dir.string());

  SeededRng matrix_rng(mix_seed(cfg.seed, kStreamMatrix));
  const inject::InjectionMatrix matrix = inject::build_injection_matrix(
      cfg.count, cfg.fraction, matrix_rng, cfg.straylight_override, cfg.enabled);

  const double straylight_fraction =
      cfg.count > 0 ? static_cast<double>(matrix.n_straylight()) / cfg.count : 0.0;
  const std::vector<scene::Stage> plan = scene::stratified_plan(cfg.count, straylight_fraction);

  // Run-level manifest (worker count deliberately omitted: output trees are
  // byte-identical at any parallelism).
  {
    nlohmann::ordered_json j;
    j["generator"] = {{"name", kGeneratorName},
                      {"version", kGeneratorVersion},
                      {"rng", kRngAlgorithm}};
    j["master_seed"] = cfg.seed;
    j["count"] = cfg.count;
    j["fraction"] = cfg.fraction;
    j["n_straylight"] = matrix.n_straylight();
    j["camera"] = {{"fov_deg", cfg.camera.fov_deg},
                   {"width", cfg.camera.width},
                   {"height", cfg.camera.height}};
    nlohmann::ordered_json classes;
    for (int c = 0; c < inject::kFaultClassCount; ++c)
      classes[inject::fault_class_name(static_cast<inject::FaultClass>(c))] = cfg.enabled[c];
    j["classes"] = std::move(classes);
    j["background"] = {{"mode", cfg.background_mode}};
    std::ofstream outfile(cfg.out_dir / "run_manifest.json");
    if (!outfile) throw IoError("cannot write run manifest");
    outfile << j.dump(2) << '\n';
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.count) break;
      try {
        const auto flags = inject::FaultFlags::from_matrix(matrix, i);
        SampleOutputs out = produce_sample(cfg, i, plan[i], flags);
        write_sample_files(out, cfg.out_dir / detail::sample_dir_name(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(cfg.count);
        break;
      }
    }
  };

  if (cfg.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(cfg.workers);
    for (int t = 0; t < cfg.workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunSummary summary;
  summary.n_total = cfg.count;
  summary.n_straylight = matrix.n_straylight();
  for (int c = 0; c < inject::kFaultClassCount; ++c)
    summary.class_counts[c] = matrix.class_count(static_cast<inject::FaultClass>(c));
  summary.out_dir = cfg.out_dir.string();
  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return summary;
}

}  // namespace camfault::run
