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

// Command-line front end: batch dataset generation, single-image fault
// injection, and texture dumps.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 internal error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "camfault/camfault.hpp"

namespace cf = camfault;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

cf::scene::SunPixel parse_sun(const std::string& text) {
  if (text == "behind") {
    cf::scene::SunPixel px;
    px.behind = true;
    return px;
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw cf::run::UsageError("--sun expects 'U,V' or 'behind'");
  cf::scene::SunPixel px;
  try {
    px.u = std::stod(text.substr(0, comma));
    px.v = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw cf::run::UsageError("--sun expects numeric 'U,V' coordinates");
  }
  return px;
}

cf::inject::FaultFlags parse_faults(const std::string& csv) {
  cf::inject::FaultFlags flags;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const std::string name =
        csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!name.empty()) {
      try {
        flags.set(cf::inject::fault_class_from_name(name), true);
      } catch (const std::invalid_argument& e) {
        throw cf::run::UsageError(std::string("--faults: ") + e.what());
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return flags;
}

cf::inject::PipelineOverrides load_params_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw cf::IoError("cannot open params file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw cf::run::UsageError("params parse error in " + path.string() + ": " + e.what());
  }

  cf::inject::PipelineOverrides o;
  try {
    if (j.contains("dust") && j.at("dust").contains("count"))
      o.dust_count = j.at("dust").at("count").get<int>();
    if (j.contains("broken_pixels")) {
      const auto& b = j.at("broken_pixels");
      if (b.contains("sensor"))
        o.sensor = cf::inject::sensor_from_name(b.at("sensor").get<std::string>());
      if (b.contains("count")) o.broken_pixel_count = b.at("count").get<int>();
      if (b.contains("line_direction"))
        o.line_direction =
            cf::inject::direction_from_name(b.at("line_direction").get<std::string>());
    }
    if (j.contains("broken_lines")) {
      const auto& b = j.at("broken_lines");
      if (b.contains("sensor") && !o.sensor)
        o.sensor = cf::inject::sensor_from_name(b.at("sensor").get<std::string>());
      if (b.contains("count")) o.broken_line_count = b.at("count").get<int>();
      if (b.contains("polarities")) {
        std::vector<std::uint8_t> pol;
        for (const auto& p : b.at("polarities"))
          pol.push_back(static_cast<std::uint8_t>(p.get<int>()));
        o.line_polarities = std::move(pol);
      }
    }
    if (j.contains("straylight")) {
      const auto& s = j.at("straylight");
      cf::inject::StraylightParams sl;
      for (const auto& f : s.at("flares")) {
        cf::inject::FlareInstance fl;
        fl.index = f.at("index").get<int>();
        fl.position = f.at("position").get<double>();
        fl.radius = f.at("radius").get<double>();
        fl.brightness = f.at("brightness").get<double>();
        sl.flares.push_back(fl);
      }
      if (s.contains("glare")) {
        const auto& g = s.at("glare");
        sl.glare.injected = g.value("injected", false);
        if (sl.glare.injected) {
          sl.glare.index = g.at("index").get<int>();
          sl.glare.radius = g.at("radius").get<double>();
          sl.glare.brightness = g.at("brightness").get<double>();
        }
      }
      o.straylight = std::move(sl);
    }
    if (j.contains("vignetting") && j.at("vignetting").contains("e0"))
      o.vignette_e0 = j.at("vignetting").at("e0").get<int>();
    if (j.contains("optics_degradation") && j.at("optics_degradation").contains("kernel_size"))
      o.blur_size = j.at("optics_degradation").at("kernel_size").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw cf::run::UsageError("params field error in " + path.string() + ": " + e.what());
  }
  return o;
}

std::vector<std::uint8_t> texture_to_gray(const cf::tex::Texture& t) {
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(t.width) * t.height);
  for (int y = 0; y < t.height; ++y)
    for (int x = 0; x < t.width; ++x)
      gray[static_cast<std::size_t>(y) * t.width + x] = static_cast<std::uint8_t>(
          std::clamp<long>(std::lround(t.value(x, y)), 0, 255));
  return gray;
}

std::vector<std::uint8_t> texture_to_rgb(const cf::tex::Texture& t) {
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(t.width) * t.height * 3);
  for (int y = 0; y < t.height; ++y)
    for (int x = 0; x < t.width; ++x)
      for (int c = 0; c < 3; ++c)
        rgb[(static_cast<std::size_t>(y) * t.width + x) * 3 + c] = static_cast<std::uint8_t>(
            std::clamp<long>(std::lround(t.color(x, y)[c]), 0, 255));
  return rgb;
}

int run_generate(const cf::run::RunConfig& cfg, bool json_summary) {
  const cf::run::RunSummary summary = cf::run::generate_run(cfg);
  if (json_summary) {
    std::cout << summary.to_json().dump(2) << '\n';
  } else {
    std::cout << "generated " << summary.n_total << " samples (" << summary.n_straylight
              << " straylight) in " << summary.seconds << " s -> " << summary.out_dir << '\n';
  }
  return kExitOk;
}

int run_inject(const cf::run::InjectRequest& req, const fs::path& out_dir, bool json_summary) {
  cf::run::SampleOutputs out = cf::run::inject_image(req);
  cf::run::write_sample_files(out, out_dir);
  if (json_summary) {
    nlohmann::ordered_json j;
    j["out_dir"] = out_dir.string();
    j["files"] = out.manifest.files;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "injected -> " << out_dir.string() << '\n';
  }
  return kExitOk;
}

int run_dump(const std::string& kind, const fs::path& out_dir, double peak, double sigma_xx,
             double sigma_yy, int e0, int size, double fov) {
  fs::create_directories(out_dir);
  if (kind == "grain") {
    cf::tex::GrainParams gp;
    gp.peak = peak;
    gp.sigma_xx = sigma_xx;
    gp.sigma_yy = sigma_yy;
    const auto t = cf::tex::dust_grain(gp);
    cf::write_gray_png(texture_to_gray(t), t.width, t.height, out_dir / "grain.png");
  } else if (kind == "vignette") {
    const cf::CameraModel cam(fov, 1024, 1024);
    const auto t = cf::tex::vignette_field(e0, cam);
    cf::write_gray_png(texture_to_gray(t), t.width, t.height, out_dir / "vignette.png");
  } else if (kind == "kernel") {
    const auto k = cf::tex::gaussian_kernel(size);
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(k.size) * k.size);
    const double peak2d = k.weights[k.size / 2] * k.weights[k.size / 2];
    for (int y = 0; y < k.size; ++y)
      for (int x = 0; x < k.size; ++x)
        gray[static_cast<std::size_t>(y) * k.size + x] = static_cast<std::uint8_t>(
            std::clamp<long>(std::lround(255.0 * k.at2d(y, x) / peak2d), 0, 255));
    cf::write_gray_png(gray, k.size, k.size, out_dir / "kernel.png");
  } else if (kind == "flares") {
    for (int i = 1; i <= 10; ++i) {
      const auto t = cf::tex::flare_primitive(i);
      char name[32];
      std::snprintf(name, sizeof name, "flare_%02d.png", i);
      cf::write_rgb_png(texture_to_rgb(t), t.width, t.height, out_dir / name);
    }
    for (int i = 1; i <= 2; ++i) {
      const auto t = cf::tex::glare_primitive(i);
      char name[32];
      std::snprintf(name, sizeof name, "glare_%d.png", i);
      cf::write_rgb_png(texture_to_rgb(t), t.width, t.height, out_dir / name);
    }
  } else {
    throw cf::run::UsageError("--kind must be grain, vignette, kernel, or flares");
  }
  std::cout << "textures -> " << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"camfault: camera-sensor fault injection and dataset generation"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a dataset of faulty samples");
  cf::run::RunConfig cfg;
  std::string gen_out;
  std::string config_path;
  std::vector<std::string> disabled;
  int straylight_count = -1;
  bool gen_json = false;
  int width = 0, height = 0;
  gen->add_option("--count", cfg.count, "number of samples");
  gen->add_option("--fraction", cfg.fraction, "faulty-sample fraction in [0,1]");
  gen->add_option("--seed", cfg.seed, "master seed");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--config", config_path, "JSON run configuration file");
  gen->add_option("--workers", cfg.workers, "parallel worker count");
  gen->add_option("--fov", cfg.camera.fov_deg, "horizontal field of view, degrees");
  gen->add_option("--width", width, "image width, pixels");
  gen->add_option("--height", height, "image height, pixels");
  gen->add_option("--disable", disabled, "disable a fault class (repeatable)");
  gen->add_option("--straylight-count", straylight_count,
                  "override the number of Sun-facing samples");
  gen->add_flag("--unsafe-ranges", cfg.unsafe_ranges,
                "allow range overrides wider than the dataset bounds");
  gen->add_flag("--json", gen_json, "print the run summary as JSON");

  // inject
  auto* inj = app.add_subcommand("inject", "inject faults into a user-supplied image");
  std::string in_path, sun_text, faults_csv, params_path, inj_out;
  std::uint64_t inj_seed = 1;
  double inj_fov = 65.0;
  bool inj_json = false;
  inj->add_option("--in", in_path, "input image (8-bit PNG)")->required();
  inj->add_option("--sun", sun_text, "Sun pixel 'U,V' (or 'behind')");
  inj->add_option("--faults", faults_csv, "comma-separated fault classes");
  inj->add_option("--params", params_path, "JSON file with explicit fault parameters");
  inj->add_option("--seed", inj_seed, "seed for drawn parameters");
  inj->add_option("--out", inj_out, "output directory")->required();
  inj->add_option("--fov", inj_fov, "field of view used for vignetting geometry");
  inj->add_flag("--json", inj_json, "print the output summary as JSON");

  // dump-textures
  auto* dump = app.add_subcommand("dump-textures", "export texture panels for inspection");
  std::string kind, dump_out;
  double peak = 200.0, sigma_xx = 4.0, sigma_yy = 4.0, dump_fov = 65.0;
  int e0 = 255, size = 9;
  dump->add_option("--kind", kind, "grain | vignette | kernel | flares")->required();
  dump->add_option("--out", dump_out, "output directory")->required();
  dump->add_option("--peak", peak, "grain peak value");
  dump->add_option("--sigma-xx", sigma_xx, "grain sigma_xx");
  dump->add_option("--sigma-yy", sigma_yy, "grain sigma_yy");
  dump->add_option("--e0", e0, "vignette on-axis illuminance");
  dump->add_option("--size", size, "kernel size");
  dump->add_option("--fov", dump_fov, "field of view for the vignette field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (!config_path.empty()) {
        // File overrides defaults; explicit command-line flags override the file.
        cf::run::RunConfig from_file = cf::run::load_run_config(config_path, cfg);
        if (gen->count("--count") == 0) cfg.count = from_file.count;
        if (gen->count("--fraction") == 0) cfg.fraction = from_file.fraction;
        if (gen->count("--seed") == 0) cfg.seed = from_file.seed;
        if (gen->count("--workers") == 0) cfg.workers = from_file.workers;
        if (gen->count("--fov") == 0) cfg.camera.fov_deg = from_file.camera.fov_deg;
        if (gen->count("--width") == 0) width = from_file.camera.width;
        if (gen->count("--height") == 0) height = from_file.camera.height;
        cfg.enabled = from_file.enabled;
        cfg.straylight_override = from_file.straylight_override;
        cfg.bounds = from_file.bounds;
        if (gen->count("--unsafe-ranges") == 0) cfg.unsafe_ranges = from_file.unsafe_ranges;
        cfg.background_mode = from_file.background_mode;
        cfg.import_images = from_file.import_images;
        cfg.import_suns = from_file.import_suns;
      }
      if (width > 0) cfg.camera.width = width;
      if (height > 0) cfg.camera.height = height;
      for (const std::string& name : disabled) {
        try {
          cfg.enabled[static_cast<int>(cf::inject::fault_class_from_name(name))] = false;
        } catch (const std::invalid_argument& e) {
          throw cf::run::UsageError(std::string("--disable: ") + e.what());
        }
      }
      if (straylight_count >= 0) cfg.straylight_override = straylight_count;
      cfg.out_dir = gen_out;
      return run_generate(cfg, gen_json);
    }

    if (inj->parsed()) {
      cf::run::InjectRequest req;
      req.image_path = in_path;
      if (!sun_text.empty()) req.sun = parse_sun(sun_text);
      req.flags = parse_faults(faults_csv);
      if (!params_path.empty()) req.overrides = load_params_file(params_path);
      req.seed = inj_seed;
      req.fov_deg = inj_fov;
      return run_inject(req, inj_out, inj_json);
    }

    if (dump->parsed())
      return run_dump(kind, dump_out, peak, sigma_xx, sigma_yy, e0, size, dump_fov);
  } catch (const cf::run::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cf::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
