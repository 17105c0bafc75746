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

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "camfault/core/image.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/inject/injectors.hpp"
#include "camfault/inject/matrix.hpp"
#include "camfault/inject/params.hpp"
#include "camfault/labels/masks.hpp"
#include "camfault/scene/projection.hpp"

namespace camfault::inject {

struct FaultFlags {
  bool dust = false;
  bool broken_pixels = false;
  bool broken_lines = false;
  bool vignetting = false;
  bool optics_degradation = false;
  bool straylight = false;

  static FaultFlags from_matrix(const InjectionMatrix& m, int sample) {
    FaultFlags f;
    f.dust = m.get(FaultClass::kDust, sample);
    f.broken_pixels = m.get(FaultClass::kBrokenPixels, sample);
    f.broken_lines = m.get(FaultClass::kBrokenLines, sample);
    f.vignetting = m.get(FaultClass::kVignetting, sample);
    f.optics_degradation = m.get(FaultClass::kOpticsDegradation, sample);
    f.straylight = m.get(FaultClass::kStraylight, sample);
    return f;
  }

  bool get(FaultClass c) const {
    switch (c) {
      case FaultClass::kDust: return dust;
      case FaultClass::kBrokenPixels: return broken_pixels;
      case FaultClass::kBrokenLines: return broken_lines;
      case FaultClass::kVignetting: return vignetting;
      case FaultClass::kOpticsDegradation: return optics_degradation;
      case FaultClass::kStraylight: return straylight;
    }
    return false;
  }

  void set(FaultClass c, bool v) {
    switch (c) {
      case FaultClass::kDust: dust = v; break;
      case FaultClass::kBrokenPixels: broken_pixels = v; break;
      case FaultClass::kBrokenLines: broken_lines = v; break;
      case FaultClass::kVignetting: vignetting = v; break;
      case FaultClass::kOpticsDegradation: optics_degradation = v; break;
      case FaultClass::kStraylight: straylight = v; break;
    }
  }

  bool any() const {
    return dust || broken_pixels || broken_lines || vignetting || optics_degradation ||
           straylight;
  }

  bool operator==(const FaultFlags&) const = default;
};

/// Explicit parameter choices for callers that pin values instead of
/// drawing them (single-image injection, table reproduction, manifest
/// regeneration). Unset fields are drawn from the stage streams.
///
/// Forcing a value does not change what the streams emit: the headline
/// draw is always consumed and then replaced, so a run that forces exactly
/// the values another run drew replays all dependent draws (grain shapes,
/// defect positions, line indices) bit-identically.
struct PipelineOverrides {
  std::optional<int> dust_count;
  std::optional<SensorArchitecture> sensor;
  std::optional<int> broken_pixel_count;
  std::optional<LineDirection> line_direction;
  std::optional<int> broken_line_count;
  std::optional<std::vector<std::uint8_t>> line_polarities;  // size == count when given
  std::optional<StraylightParams> straylight;                // full flare/glare record
  std::optional<int> vignette_e0;
  std::optional<int> blur_size;
};

/// Effective parameters of one generated sample, mirroring the per-fault
/// tables; fields are present exactly for the injected classes.
struct FaultRecord {
  std::optional<DustParams> dust;
  std::optional<BrokenPixelParams> broken_pixels;
  std::optional<BrokenLineParams> broken_lines;
  std::optional<StraylightParams> straylight;
  std::optional<int> vignette_e0;
  std::optional<int> blur_size;

  bool operator==(const FaultRecord&) const = default;
};

/// Rebuilds the override set that reproduces a recorded sample bit-exactly
/// when replayed with its original seed.
inline PipelineOverrides overrides_from_record(const FaultRecord& record) {
  PipelineOverrides o;
  if (record.dust) o.dust_count = record.dust->count();
  if (record.broken_pixels) {
    o.sensor = record.broken_pixels->sensor;
    o.broken_pixel_count = record.broken_pixels->count();
    o.line_direction = record.broken_pixels->direction;
  }
  if (record.broken_lines) {
    if (!o.sensor) o.sensor = record.broken_lines->sensor;
    o.broken_line_count = record.broken_lines->count();
    std::vector<std::uint8_t> pol;
    pol.reserve(record.broken_lines->lines.size());
    for (const auto& l : record.broken_lines->lines) pol.push_back(l.polarity);
    o.line_polarities = std::move(pol);
  }
  if (record.straylight) o.straylight = *record.straylight;
  o.vignette_e0 = record.vignette_e0;
  o.blur_size = record.blur_size;
  return o;
}

/// Everything produced for one sample: the clean background, the faulty
/// render, the flare-free companion (Sun-facing samples only), per-class
/// masks (empty when not injected; all-ones for the global blur class),
/// the straylight-only texture, and the drawn parameter record.
struct FaultySample {
  ImageRGBI clean;
  ImageRGBI faulty;
  std::optional<ImageRGBI> flare_free;
  std::array<FaultMask, kFaultClassCount> masks;
  tex::Texture straylight_texture;
  FaultRecord record;
};

namespace detail {

// Sub-stream indices of the pipeline seed; one per stage plus the shared
// sensor draw, so the flare-free rerun replays stages 2-6 bit-exactly.
inline constexpr std::uint64_t kStreamStraylight = 1;
inline constexpr std::uint64_t kStreamDust = 2;
inline constexpr std::uint64_t kStreamVignette = 3;
inline constexpr std::uint64_t kStreamBlur = 4;
inline constexpr std::uint64_t kStreamBrokenPixels = 5;
inline constexpr std::uint64_t kStreamBrokenLines = 6;
inline constexpr std::uint64_t kStreamSensor = 7;

}  // namespace detail

/// Applies the enabled injectors to a clean background.
///
/// Composition order is lens-to-sensor: straylight, dust, vignetting, blur,
/// then the sensor defects (broken pixels, broken lines) so readout
/// artifacts stay crisp. Each stage draws from its own sub-stream of
/// `seed`; when straylight is enabled, stages 2-6 are replayed with the
/// same sub-streams on the un-flared background to produce the flare-free
/// render, and the straylight mask is recovered by subtraction.
inline FaultySample apply_pipeline(const ImageRGBI& background, const scene::SunPixel& sun,
                                   const FaultFlags& flags, std::uint64_t seed,
                                   double fov_deg = 65.0, const ParamBounds& bounds = {},
                                   const PipelineOverrides& overrides = {}) {
  if (flags.straylight && sun.behind)
    throw std::invalid_argument("apply_pipeline: straylight requires the Sun ahead of the camera");

  FaultySample out;
  out.clean = background;
  for (auto& m : out.masks) m = FaultMask(background.width(), background.height());

  // The sensor architecture and readout direction are image-wide draws
  // shared by both sensor-fault injectors.
  SensorArchitecture sensor = SensorArchitecture::kCmos;
  LineDirection direction = LineDirection::kRight;
  if (flags.broken_pixels || flags.broken_lines) {
    SeededRng sensor_rng(mix_seed(seed, detail::kStreamSensor));
    const auto drawn_sensor = static_cast<SensorArchitecture>(sensor_rng.bounded(4));
    const auto drawn_direction = static_cast<LineDirection>(sensor_rng.bounded(4));
    sensor = overrides.sensor.value_or(drawn_sensor);
    direction = overrides.line_direction.value_or(drawn_direction);
  }

  const auto run_stages = [&](const ImageRGBI& start, bool with_straylight,
                              bool capture) -> ImageRGBI {
    ImageRGBI img = start;

    if (with_straylight && flags.straylight) {
      SeededRng rng(mix_seed(seed, detail::kStreamStraylight));
      auto res = inject_straylight(img, sun, rng, bounds,
                                   overrides.straylight ? &*overrides.straylight : nullptr);
      img = std::move(res.image);
      if (capture) {
        out.straylight_texture = std::move(res.texture);
        out.record.straylight = std::move(res.params);
      }
    }

    if (flags.dust) {
      SeededRng rng(mix_seed(seed, detail::kStreamDust));
      const int drawn =
          static_cast<int>(rng.uniform_int(bounds.dust_grains.lo, bounds.dust_grains.hi));
      const int n = overrides.dust_count.value_or(drawn);
      ParamBounds eff = bounds;
      if (overrides.dust_count) eff.dust_grains = {n, n};
      auto res = inject_dust(img, n, rng, eff);
      img = std::move(res.image);
      if (capture) {
        out.masks[static_cast<int>(FaultClass::kDust)] = std::move(res.mask);
        out.record.dust = std::move(res.params);
      }
    }

    if (flags.vignetting) {
      SeededRng rng(mix_seed(seed, detail::kStreamVignette));
      const int drawn =
          static_cast<int>(rng.uniform_int(bounds.vignette_e0.lo, bounds.vignette_e0.hi));
      const int e0 = overrides.vignette_e0.value_or(drawn);
      ParamBounds eff = bounds;
      if (overrides.vignette_e0) eff.vignette_e0 = {e0, e0};
      auto res = inject_vignetting(img, e0, fov_deg, eff);
      img = std::move(res.image);
      if (capture) {
        out.masks[static_cast<int>(FaultClass::kVignetting)] = std::move(res.mask);
        out.record.vignette_e0 = e0;
      }
    }

    if (flags.optics_degradation) {
      SeededRng rng(mix_seed(seed, detail::kStreamBlur));
      const int first_odd = bounds.blur_size.lo + (bounds.blur_size.lo % 2 == 0 ? 1 : 0);
      const int n_odd = (bounds.blur_size.hi - first_odd) / 2 + 1;
      const int drawn = first_odd + 2 * static_cast<int>(rng.bounded(n_odd));
      const int size = overrides.blur_size.value_or(drawn);
      ParamBounds eff = bounds;
      if (overrides.blur_size) eff.blur_size = {size, size};
      img = inject_blur(img, size, eff);
      if (capture) {
        out.record.blur_size = size;
        out.masks[static_cast<int>(FaultClass::kOpticsDegradation)].fill(true);
      }
    }

    if (flags.broken_pixels) {
      SeededRng rng(mix_seed(seed, detail::kStreamBrokenPixels));
      const int drawn =
          static_cast<int>(rng.uniform_int(bounds.broken_pixels.lo, bounds.broken_pixels.hi));
      const int n = overrides.broken_pixel_count.value_or(drawn);
      ParamBounds eff = bounds;
      eff.broken_pixels = {n, n};
      BrokenPixelParams params = draw_broken_pixel_params(rng, sensor, direction, eff);
      auto res = inject_broken_pixels(img, params, rng, eff);
      img = std::move(res.image);
      if (capture) {
        out.masks[static_cast<int>(FaultClass::kBrokenPixels)] = std::move(res.mask);
        out.record.broken_pixels = std::move(params);
      }
    }

    if (flags.broken_lines) {
      SeededRng rng(mix_seed(seed, detail::kStreamBrokenLines));
      const int drawn =
          static_cast<int>(rng.uniform_int(bounds.broken_lines.lo, bounds.broken_lines.hi));
      const int n = overrides.broken_line_count.value_or(drawn);
      // Single-register CCDs couple the electronics-line orientation to the
      // hot-pixel readout direction when both sensor faults are present.
      std::optional<LineOrientation> coupled;
      if (flags.broken_pixels && !mixed_line_orientations_allowed(sensor))
        coupled = orientation_for_direction(direction);

      ParamBounds eff = bounds;
      eff.broken_lines = {n, n};
      BrokenLineParams params =
          draw_broken_line_params(rng, sensor, coupled, img.width(), img.height(), eff);
      if (overrides.line_polarities) {
        if (overrides.line_polarities->size() != params.lines.size())
          throw std::invalid_argument(
              "apply_pipeline: line_polarities size must match the broken-line count");
        for (std::size_t i = 0; i < params.lines.size(); ++i)
          params.lines[i].polarity = (*overrides.line_polarities)[i];
      }
      auto res = inject_broken_lines(img, params, eff);
      img = std::move(res.image);
      if (capture) {
        out.masks[static_cast<int>(FaultClass::kBrokenLines)] = std::move(res.mask);
        out.record.broken_lines = std::move(params);
      }
    }

    return img;
  };

  out.faulty = run_stages(background, /*with_straylight=*/true, /*capture=*/true);

  if (flags.straylight) {
    out.flare_free = run_stages(background, /*with_straylight=*/false, /*capture=*/false);
    out.masks[static_cast<int>(FaultClass::kStraylight)] =
        labels::straylight_mask(out.faulty, *out.flare_free);
  }

  return out;
}

}  // namespace camfault::inject
