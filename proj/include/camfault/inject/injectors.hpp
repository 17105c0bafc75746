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
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "camfault/core/image.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/inject/params.hpp"
#include "camfault/scene/projection.hpp"
#include "camfault/textures/flare.hpp"
#include "camfault/textures/grain.hpp"
#include "camfault/textures/kernel.hpp"
#include "camfault/textures/texture.hpp"
#include "camfault/textures/vignette.hpp"

namespace camfault::inject {

// ---------------------------------------------------------------------------
// Dust on optics

struct DustResult {
  ImageRGBI image;
  FaultMask mask;
  DustParams params;
};

/// Scatters n_grains Gaussian dust grains at uniform positions (overlap and
/// border clipping allowed), sums them into one intensity-drop texture, and
/// subtracts it from the intensity channel with saturation; color channels
/// scale proportionally. The mask marks pixels whose quantized drop is >= 1.
///
/// Per grain the draw order is peak, sigma_xx, sigma_yy, center x, center y.
inline DustResult inject_dust(const ImageRGBI& img, int n_grains, SeededRng& rng,
                              const ParamBounds& bounds = {}) {
  if (!bounds.dust_grains.contains(n_grains))
    throw std::invalid_argument("inject_dust: n_grains out of range");

  const int w = img.width(), h = img.height();
  std::vector<float> drop(static_cast<std::size_t>(w) * h, 0.0f);

  DustResult out;
  out.params.grains.reserve(n_grains);
  for (int i = 0; i < n_grains; ++i) {
    tex::GrainParams gp;
    gp.peak = rng.uniform(bounds::kGrainPeakMin, bounds::kGrainPeakMax);
    gp.sigma_xx = rng.uniform(bounds::kGrainSigmaMin, bounds::kGrainSigmaMax);
    gp.sigma_yy = rng.uniform(bounds::kGrainSigmaMin, bounds::kGrainSigmaMax);
    const int cx = static_cast<int>(rng.bounded(w));
    const int cy = static_cast<int>(rng.bounded(h));
    out.params.grains.push_back(gp);

    const tex::Texture grain = tex::dust_grain(gp);
    const int half = grain.width / 2;
    for (int gy = 0; gy < grain.height; ++gy) {
      const int y = cy + gy - half;
      if (y < 0 || y >= h) continue;
      for (int gx = 0; gx < grain.width; ++gx) {
        const int x = cx + gx - half;
        if (x < 0 || x >= w) continue;
        drop[static_cast<std::size_t>(y) * w + x] += grain.value(gx, gy);
      }
    }
  }

  out.image = img;
  out.mask = FaultMask(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const long q = std::lround(drop[static_cast<std::size_t>(y) * w + x]);
      if (q < 1) continue;
      out.mask.set(x, y);
      const std::uint8_t old_i = out.image.at(x, y, kI);
      out.image.set_intensity_scaled(x, y, saturating_add(old_i, static_cast<int>(-q)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Broken pixels (hot pixels, demosaicing spread, subtended CCD lines)

struct BrokenPixelResult {
  ImageRGBI image;
  FaultMask mask;
};

/// Draws a full hot-pixel parameter record: pixel count, per-pixel
/// brightness and, on CCD architectures, the subtended-line brightness
/// capped by min(65, 0.4 * pixel brightness).
inline BrokenPixelParams draw_broken_pixel_params(SeededRng& rng, SensorArchitecture sensor,
                                                  LineDirection direction,
                                                  const ParamBounds& bounds = {}) {
  BrokenPixelParams p;
  p.sensor = sensor;
  p.direction = direction;
  const int n = static_cast<int>(rng.uniform_int(bounds.broken_pixels.lo, bounds.broken_pixels.hi));
  p.pixels.reserve(n);
  for (int i = 0; i < n; ++i) {
    BrokenPixel bp;
    bp.brightness = static_cast<std::uint8_t>(
        rng.uniform_int(bounds.pixel_brightness.lo, bounds.pixel_brightness.hi));
    if (is_ccd(sensor)) {
      const int cap = std::min<int>(
          bounds::kSubtendedLineCap,
          static_cast<int>(std::floor(bounds::kSubtendedLineFactor * bp.brightness)));
      bp.line_brightness = static_cast<std::uint8_t>(rng.uniform_int(0, cap));
    }
    p.pixels.push_back(bp);
  }
  return p;
}

/// Injects hot pixels at distinct uniform positions. Each defect overwrites
/// its pixel's intensity, spreads into the von Neumann neighborhood as the
/// demosaicing midpoint of the defect value and the working pixel two steps
/// out, and (CCD kinds) subtends a line of its drawn brightness from the
/// defect to the readout edge. Directions are image-wide constant. The mask
/// is the union of defects, neighbors and line pixels.
inline BrokenPixelResult inject_broken_pixels(const ImageRGBI& img,
                                              const BrokenPixelParams& params,
                                              SeededRng& rng,
                                              const ParamBounds& bounds = {}) {
  params.validate(bounds);
  const int w = img.width(), h = img.height();
  if (static_cast<long long>(params.count()) > static_cast<long long>(w) * h)
    throw std::invalid_argument("inject_broken_pixels: more defects than pixels");

  BrokenPixelResult out{img, FaultMask(w, h)};

  std::set<std::pair<int, int>> used;
  for (const BrokenPixel& defect : params.pixels) {
    int x, y;
    do {
      x = static_cast<int>(rng.bounded(w));
      y = static_cast<int>(rng.bounded(h));
    } while (!used.emplace(x, y).second);

    static constexpr int kDirs[4][2] = {{0, -1}, {0, 1}, {1, 0}, {-1, 0}};  // up,down,right,left
    const std::uint8_t b = defect.brightness;

    // Working-pixel reads happen before any write of this defect.
    std::uint8_t working[4];
    for (int d = 0; d < 4; ++d) {
      const int wx = std::clamp(x + 2 * kDirs[d][0], 0, w - 1);
      const int wy = std::clamp(y + 2 * kDirs[d][1], 0, h - 1);
      working[d] = out.image.at(wx, wy, kI);
    }

    if (is_ccd(params.sensor)) {
      const std::uint8_t lb = defect.line_brightness;
      auto paint = [&](int px, int py) {
        out.image.set_intensity_scaled(px, py, lb);
        out.mask.set(px, py);
      };
      switch (params.direction) {
        case LineDirection::kRight:
          for (int px = x + 1; px < w; ++px) paint(px, y);
          break;
        case LineDirection::kLeft:
          for (int px = 0; px < x; ++px) paint(px, y);
          break;
        case LineDirection::kUp:
          for (int py = 0; py < y; ++py) paint(x, py);
          break;
        case LineDirection::kDown:
          for (int py = y + 1; py < h; ++py) paint(x, py);
          break;
      }
    }

    for (int d = 0; d < 4; ++d) {
      const int nx = x + kDirs[d][0];
      const int ny = y + kDirs[d][1];
      if (!out.image.contains(nx, ny)) continue;
      const auto interpolated = static_cast<std::uint8_t>((int(b) + int(working[d]) + 1) / 2);
      out.image.set_intensity_scaled(nx, ny, interpolated);
      out.mask.set(nx, ny);
    }

    out.image.set_intensity_scaled(x, y, b);
    out.mask.set(x, y);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Broken lines (readout electronics row/column failures)

struct BrokenLineResult {
  ImageRGBI image;
  FaultMask mask;
};

/// Draws electronics-line parameters. On single-register sensors all lines
/// share one orientation; a coupled orientation (from the hot-pixel readout
/// direction) takes precedence when given. Indices are distinct per
/// orientation. Per line the draw order is orientation (where free), index,
/// polarity.
inline BrokenLineParams draw_broken_line_params(SeededRng& rng, SensorArchitecture sensor,
                                                std::optional<LineOrientation> coupled,
                                                int width, int height,
                                                const ParamBounds& bounds = {}) {
  BrokenLineParams p;
  p.sensor = sensor;
  const int n = static_cast<int>(rng.uniform_int(bounds.broken_lines.lo, bounds.broken_lines.hi));

  std::optional<LineOrientation> forced = coupled;
  if (!forced && !mixed_line_orientations_allowed(sensor))
    forced = rng.bounded(2) == 0 ? LineOrientation::kRow : LineOrientation::kColumn;

  std::set<std::pair<int, int>> used;  // (orientation, index)
  for (int i = 0; i < n; ++i) {
    BrokenLine line;
    line.orientation = forced ? *forced
                              : (rng.bounded(2) == 0 ? LineOrientation::kRow
                                                     : LineOrientation::kColumn);
    const int span = line.orientation == LineOrientation::kRow ? height : width;
    do {
      line.index = static_cast<int>(rng.bounded(span));
    } while (!used.emplace(static_cast<int>(line.orientation), line.index).second);
    line.polarity = rng.bounded(2) == 0 ? 0 : 255;
    p.lines.push_back(line);
  }
  return p;
}

/// Overwrites whole rows/columns with dead (0) or saturated (255) values in
/// all four channels.
inline BrokenLineResult inject_broken_lines(const ImageRGBI& img,
                                            const BrokenLineParams& params,
                                            const ParamBounds& bounds = {}) {
  params.validate(bounds);
  const int w = img.width(), h = img.height();
  BrokenLineResult out{img, FaultMask(w, h)};

  for (const BrokenLine& line : params.lines) {
    if (line.orientation == LineOrientation::kRow) {
      if (line.index < 0 || line.index >= h)
        throw std::invalid_argument("inject_broken_lines: row index out of raster");
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 4; ++c) out.image.at(x, line.index, c) = line.polarity;
        out.mask.set(x, line.index);
      }
    } else {
      if (line.index < 0 || line.index >= w)
        throw std::invalid_argument("inject_broken_lines: column index out of raster");
      for (int y = 0; y < h; ++y) {
        for (int c = 0; c < 4; ++c) out.image.at(line.index, y, c) = line.polarity;
        out.mask.set(line.index, y);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Straylight (flares on the source-center line, optional glare)

struct StraylightResult {
  ImageRGBI image;
  tex::Texture texture;  // composited straylight-only values, RGB
  StraylightParams params;
};

namespace detail {

/// Probability that a straylight image also carries a diffuse glare.
inline constexpr double kGlareProbability = 0.5;
inline constexpr double kGlareRadiusMin = 0.25;  // fraction of image width
inline constexpr double kGlareRadiusMax = 0.6;

inline StraylightParams draw_straylight_params(SeededRng& rng, const ParamBounds& bounds) {
  StraylightParams p;
  const int n = static_cast<int>(rng.uniform_int(bounds.flare_count.lo, bounds.flare_count.hi));

  int ids[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (int i = 9; i > 0; --i) {
    const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(ids[i], ids[j]);
  }
  std::vector<int> chosen(ids, ids + n);
  std::sort(chosen.begin(), chosen.end());

  // Sorted positions keep every close-group flare nearer the source than
  // any far-group one while preserving the uniform order statistics.
  std::vector<double> ts(n);
  for (double& t : ts) t = rng.uniform(bounds.flare_position.lo, bounds.flare_position.hi);
  std::sort(ts.begin(), ts.end());

  p.flares.reserve(n);
  for (int i = 0; i < n; ++i) {
    FlareInstance fl;
    fl.index = chosen[i];
    fl.position = ts[i];
    fl.radius = rng.uniform(bounds.flare_radius.lo, bounds.flare_radius.hi);
    fl.brightness = rng.uniform(bounds.flare_brightness.lo, bounds.flare_brightness.hi);
    p.flares.push_back(fl);
  }

  p.glare.injected = rng.bernoulli(kGlareProbability);
  if (p.glare.injected) {
    p.glare.index = 1 + static_cast<int>(rng.bounded(2));
    p.glare.brightness = rng.uniform(bounds.flare_brightness.lo, bounds.flare_brightness.hi);
    p.glare.radius = rng.uniform(kGlareRadiusMin, kGlareRadiusMax);
  }
  return p;
}

template <typename Sampler>
void accumulate_primitive(tex::Texture& t, double cx, double cy, double radius_px,
                          double brightness, Sampler&& sample) {
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius_px)));
  const int x1 = std::min(t.width - 1, static_cast<int>(std::ceil(cx + radius_px)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius_px)));
  const int y1 = std::min(t.height - 1, static_cast<int>(std::ceil(cy + radius_px)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double nx = (x - cx) / radius_px;
      const double ny = (y - cy) / radius_px;
      if (nx * nx + ny * ny > 1.0) continue;
      const auto rgb = sample(nx, ny);
      auto& acc = t.color(x, y);
      for (int c = 0; c < 3; ++c) acc[c] += static_cast<float>(brightness * rgb[c]);
    }
  }
}

}  // namespace detail

/// Renders the drawn (or forced) flare set onto the image. Flare centers
/// lie on the line through the light source (coordinate 0) and the image
/// center (coordinate 1); the optional glare sits on the source itself.
/// Values composite additively with per-channel saturation, and the
/// straylight-only texture is returned for labelling.
inline StraylightResult inject_straylight(const ImageRGBI& img, const scene::SunPixel& sun,
                                          SeededRng& rng, const ParamBounds& bounds = {},
                                          const StraylightParams* forced = nullptr) {
  if (sun.behind)
    throw std::invalid_argument("inject_straylight: light source is behind the camera");

  const int w = img.width(), h = img.height();
  const double cx = w / 2.0, cy = h / 2.0;

  StraylightResult out;
  out.params = forced ? *forced : detail::draw_straylight_params(rng, bounds);
  out.params.validate(bounds);

  double axis_u = cx - sun.u;
  double axis_v = cy - sun.v;
  if (std::hypot(axis_u, axis_v) < 1e-6) {
    // Source exactly on the image center: the source-center line is
    // undefined, so the flare bearing is drawn (and recorded) instead.
    if (!forced) {
      out.params.degenerate_direction = true;
      out.params.degenerate_angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const double ref = w / 8.0;
    axis_u = std::cos(out.params.degenerate_angle) * ref;
    axis_v = std::sin(out.params.degenerate_angle) * ref;
  }

  out.texture = tex::Texture(w, h, /*with_rgb=*/true);
  for (const FlareInstance& fl : out.params.flares) {
    const double fx = sun.u + fl.position * axis_u;
    const double fy = sun.v + fl.position * axis_v;
    detail::accumulate_primitive(out.texture, fx, fy, fl.radius * w, fl.brightness,
                                 [&fl](double nx, double ny) {
                                   return tex::flare_sample(fl.index, nx, ny);
                                 });
  }
  if (out.params.glare.injected) {
    detail::accumulate_primitive(out.texture, sun.u, sun.v, out.params.glare.radius * w,
                                 out.params.glare.brightness,
                                 [&out](double nx, double ny) {
                                   return tex::glare_sample(out.params.glare.index, nx, ny);
                                 });
  }

  out.image = img;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto& add = out.texture.color(x, y);
      if (add[0] <= 0.0f && add[1] <= 0.0f && add[2] <= 0.0f) continue;
      for (int c = 0; c < 3; ++c)
        out.image.at(x, y, c) = saturating_add(
            out.image.at(x, y, c), static_cast<int>(std::lround(add[c])));
      out.image.refresh_intensity(x, y);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vignetting

struct VignetteResult {
  ImageRGBI image;
  FaultMask mask;
};

/// Attenuates all four channels by min(1, field/255) where field is the
/// cos^4 illuminance surface at on-axis value E0. The mask marks every
/// pixel whose field quantizes below 255, i.e. where some 8-bit value can
/// change under the scale.
inline VignetteResult inject_vignetting(const ImageRGBI& img, int e0, double fov_deg = 65.0,
                                        const ParamBounds& bounds = {}) {
  if (!bounds.vignette_e0.contains(e0))
    throw std::invalid_argument("inject_vignetting: E0 out of range");

  const CameraModel cam(fov_deg, img.width(), img.height());
  const tex::Texture field = tex::vignette_field(static_cast<double>(e0), cam);

  VignetteResult out{img, FaultMask(img.width(), img.height())};
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const float f = field.value(x, y);
      if (std::lround(f) >= 255) continue;
      out.mask.set(x, y);
      const double scale = std::min(1.0, static_cast<double>(f) / 255.0);
      for (int c = 0; c < 4; ++c)
        out.image.at(x, y, c) = static_cast<std::uint8_t>(
            std::clamp<long>(std::lround(out.image.at(x, y, c) * scale), 0, 255));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Optics degradation (uniform Gaussian blur)

/// Convolves the image with the size-parametrized Gaussian kernel; borders
/// replicate edge values so the frame does not darken.
inline ImageRGBI inject_blur(const ImageRGBI& img, int size, const ParamBounds& bounds = {}) {
  if (!bounds.blur_size.contains(size))
    throw std::invalid_argument("inject_blur: size out of range");
  return tex::convolve_replicate(img, tex::gaussian_kernel(size));
}

}  // namespace camfault::inject
