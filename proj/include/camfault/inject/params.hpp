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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "camfault/textures/grain.hpp"

namespace camfault::inject {

/// Detector construction. Full-frame and frame-transfer CCDs read out
/// through one register chain, so electronics line defects appear in a
/// single orientation per image (row XOR column); interline CCDs and CMOS
/// sensors may mix both.
enum class SensorArchitecture { kFullFrameCcd, kFrameTransferCcd, kInterlineCcd, kCmos };

inline bool is_ccd(SensorArchitecture s) { return s != SensorArchitecture::kCmos; }

inline bool mixed_line_orientations_allowed(SensorArchitecture s) {
  return s == SensorArchitecture::kInterlineCcd || s == SensorArchitecture::kCmos;
}

inline const char* sensor_name(SensorArchitecture s) {
  switch (s) {
    case SensorArchitecture::kFullFrameCcd: return "full_frame_ccd";
    case SensorArchitecture::kFrameTransferCcd: return "frame_transfer_ccd";
    case SensorArchitecture::kInterlineCcd: return "interline_ccd";
    case SensorArchitecture::kCmos: return "cmos";
  }
  return "?";
}

inline SensorArchitecture sensor_from_name(const std::string& name) {
  if (name == "full_frame_ccd" || name == "ccd") return SensorArchitecture::kFullFrameCcd;
  if (name == "frame_transfer_ccd") return SensorArchitecture::kFrameTransferCcd;
  if (name == "interline_ccd") return SensorArchitecture::kInterlineCcd;
  if (name == "cmos") return SensorArchitecture::kCmos;
  throw std::invalid_argument("unknown sensor architecture: " + name);
}

/// Readout direction of subtended hot-pixel lines; fixed within one image.
enum class LineDirection { kUp, kDown, kRight, kLeft };

inline const char* direction_name(LineDirection d) {
  switch (d) {
    case LineDirection::kUp: return "up";
    case LineDirection::kDown: return "down";
    case LineDirection::kRight: return "right";
    case LineDirection::kLeft: return "left";
  }
  return "?";
}

inline LineDirection direction_from_name(const std::string& name) {
  if (name == "up") return LineDirection::kUp;
  if (name == "down") return LineDirection::kDown;
  if (name == "right") return LineDirection::kRight;
  if (name == "left") return LineDirection::kLeft;
  throw std::invalid_argument("unknown line direction: " + name);
}

enum class LineOrientation { kRow, kColumn };

inline const char* orientation_name(LineOrientation o) {
  return o == LineOrientation::kRow ? "row" : "column";
}

inline LineOrientation orientation_from_name(const std::string& name) {
  if (name == "row") return LineOrientation::kRow;
  if (name == "column") return LineOrientation::kColumn;
  throw std::invalid_argument("unknown line orientation: " + name);
}

/// Horizontal readout sweeps along rows, vertical readout along columns;
/// couples electronics-line orientation to the subtended-line direction.
inline LineOrientation orientation_for_direction(LineDirection d) {
  return (d == LineDirection::kRight || d == LineDirection::kLeft) ? LineOrientation::kRow
                                                                   : LineOrientation::kColumn;
}

// Fault parameter bounds. Integer bounds inclusive, real bounds are the
// open sampling intervals of the dataset definition.
namespace bounds {
inline constexpr int kDustGrainsMin = 30, kDustGrainsMax = 100;
inline constexpr double kGrainPeakMin = 100.0, kGrainPeakMax = 200.0;
inline constexpr double kGrainSigmaMin = 3.0, kGrainSigmaMax = 6.0;
inline constexpr int kBrokenPixelsMin = 10, kBrokenPixelsMax = 150;
inline constexpr int kPixelBrightnessMin = 0, kPixelBrightnessMax = 255;
inline constexpr int kSubtendedLineCap = 65;
inline constexpr double kSubtendedLineFactor = 0.4;
inline constexpr int kBrokenLinesMin = 1, kBrokenLinesMax = 5;
inline constexpr int kFlareCountMin = 1, kFlareCountMax = 10;
inline constexpr double kFlarePositionMin = 0.5, kFlarePositionMax = 2.0;
inline constexpr double kFlareRadiusMin = 0.05, kFlareRadiusMax = 0.3;
inline constexpr double kFlareBrightnessMin = 1.5, kFlareBrightnessMax = 2.5;
inline constexpr int kVignetteE0Min = 105, kVignetteE0Max = 255;
inline constexpr int kBlurSizeMin = 3, kBlurSizeMax = 17;
}  // namespace bounds

struct IntRange {
  int lo = 0, hi = 0;
  bool contains(int v) const { return v >= lo && v <= hi; }
  bool within(const IntRange& outer) const { return lo >= outer.lo && hi <= outer.hi; }
};

struct RealRange {
  double lo = 0, hi = 0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool within(const RealRange& outer) const { return lo >= outer.lo && hi <= outer.hi; }
};

/// Sampling ranges used when an injector draws its own parameters. The
/// defaults are the dataset tables; a run configuration may narrow them, or
/// widen them behind an explicit unsafe-ranges switch.
struct ParamBounds {
  IntRange dust_grains{bounds::kDustGrainsMin, bounds::kDustGrainsMax};
  IntRange broken_pixels{bounds::kBrokenPixelsMin, bounds::kBrokenPixelsMax};
  IntRange pixel_brightness{bounds::kPixelBrightnessMin, bounds::kPixelBrightnessMax};
  IntRange broken_lines{bounds::kBrokenLinesMin, bounds::kBrokenLinesMax};
  IntRange flare_count{bounds::kFlareCountMin, bounds::kFlareCountMax};
  RealRange flare_position{bounds::kFlarePositionMin, bounds::kFlarePositionMax};
  RealRange flare_radius{bounds::kFlareRadiusMin, bounds::kFlareRadiusMax};
  RealRange flare_brightness{bounds::kFlareBrightnessMin, bounds::kFlareBrightnessMax};
  IntRange vignette_e0{bounds::kVignetteE0Min, bounds::kVignetteE0Max};
  IntRange blur_size{bounds::kBlurSizeMin, bounds::kBlurSizeMax};
};

/// Dust record: one entry per grain, mirroring the dust parameter table.
struct DustParams {
  std::vector<tex::GrainParams> grains;

  int count() const { return static_cast<int>(grains.size()); }
  bool operator==(const DustParams&) const = default;
};

/// One hot pixel: its brightness and (CCD only) the brightness of the line
/// it subtends toward the readout edge.
struct BrokenPixel {
  std::uint8_t brightness = 0;
  std::uint8_t line_brightness = 0;

  bool operator==(const BrokenPixel&) const = default;
};

struct BrokenPixelParams {
  SensorArchitecture sensor = SensorArchitecture::kCmos;
  LineDirection direction = LineDirection::kRight;  // meaningful for CCD kinds
  std::vector<BrokenPixel> pixels;

  int count() const { return static_cast<int>(pixels.size()); }

  void validate(const ParamBounds& b = {}) const {
    const int n = count();
    if (!b.broken_pixels.contains(n))
      throw std::invalid_argument("broken_pixels: count out of range");
    for (const auto& p : pixels) {
      if (is_ccd(sensor)) {
        const int cap = std::min<int>(
            bounds::kSubtendedLineCap,
            static_cast<int>(std::floor(bounds::kSubtendedLineFactor * p.brightness)));
        if (p.line_brightness > cap)
          throw std::invalid_argument(
              "broken_pixels: line brightness exceeds min(65, 0.4 * brightness)");
      } else if (p.line_brightness != 0) {
        throw std::invalid_argument("broken_pixels: CMOS pixels subtend no lines");
      }
    }
  }

  bool operator==(const BrokenPixelParams&) const = default;
};

struct BrokenLine {
  LineOrientation orientation = LineOrientation::kRow;
  int index = 0;                 // row or column index
  std::uint8_t polarity = 255;   // 0 dead (black) or 255 saturated (white)

  bool operator==(const BrokenLine&) const = default;
};

struct BrokenLineParams {
  SensorArchitecture sensor = SensorArchitecture::kCmos;
  std::vector<BrokenLine> lines;

  int count() const { return static_cast<int>(lines.size()); }

  void validate(const ParamBounds& b = {}) const {
    const int n = count();
    if (!b.broken_lines.contains(n))
      throw std::invalid_argument("broken_lines: count out of range");
    bool has_row = false, has_column = false;
    for (const auto& l : lines) {
      if (l.polarity != 0 && l.polarity != 255)
        throw std::invalid_argument("broken_lines: polarity must be 0 or 255");
      (l.orientation == LineOrientation::kRow ? has_row : has_column) = true;
    }
    if (has_row && has_column && !mixed_line_orientations_allowed(sensor))
      throw std::invalid_argument(
          "broken_lines: this sensor cannot mix row and column defects");
  }

  bool operator==(const BrokenLineParams&) const = default;
};

struct FlareInstance {
  int index = 1;             // primitive id, 1..10
  double position = 1.0;     // source at 0, image center at 1
  double radius = 0.1;       // fraction of image width
  double brightness = 1.5;   // multiplier on texture values

  bool operator==(const FlareInstance&) const = default;
};

struct GlareInstance {
  bool injected = false;
  int index = 1;           // 1 isotropic haze, 2 horizontal streak
  double radius = 0.5;     // fraction of image width
  double brightness = 1.5;

  bool operator==(const GlareInstance&) const = default;
};

struct StraylightParams {
  std::vector<FlareInstance> flares;
  GlareInstance glare;
  bool degenerate_direction = false;  // Sun pixel coincided with the center
  double degenerate_angle = 0.0;      // drawn flare-line bearing in that case

  int count() const { return static_cast<int>(flares.size()); }

  void validate(const ParamBounds& b = {}) const {
    const int n = count();
    if (!b.flare_count.contains(n))
      throw std::invalid_argument("straylight: flare count out of range");
    std::vector<bool> seen(11, false);
    double close_max = -1e300, far_min = 1e300;
    bool has_close = false, has_far = false;
    for (const auto& fl : flares) {
      if (fl.index < 1 || fl.index > 10)
        throw std::invalid_argument("straylight: flare index must lie in [1, 10]");
      if (seen[fl.index])
        throw std::invalid_argument("straylight: flare indices must be distinct");
      seen[fl.index] = true;
      if (!b.flare_position.contains(fl.position))
        throw std::invalid_argument("straylight: flare position out of range");
      if (!b.flare_radius.contains(fl.radius))
        throw std::invalid_argument("straylight: flare radius out of range");
      if (!b.flare_brightness.contains(fl.brightness))
        throw std::invalid_argument("straylight: flare brightness out of range");
      if (fl.index <= 5) {
        has_close = true;
        close_max = std::max(close_max, fl.position);
      } else {
        has_far = true;
        far_min = std::min(far_min, fl.position);
      }
    }
    if (has_close && has_far && !(close_max < far_min))
      throw std::invalid_argument(
          "straylight: close-group flares must sit nearer the source than far-group ones");
  }

  bool operator==(const StraylightParams&) const = default;
};

}  // namespace camfault::inject
