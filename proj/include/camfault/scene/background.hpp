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
#include <utility>

#include "camfault/core/camera.hpp"
#include "camfault/core/image.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/scene/geometry.hpp"
#include "camfault/scene/projection.hpp"
#include "camfault/scene/variables.hpp"

namespace camfault::scene {

namespace detail {

/// Lattice value in [0, 1) for integer coordinates under a fixed seed.
inline double lattice_value(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  const std::uint64_t h = camfault::detail::splitmix64(
      seed ^ (static_cast<std::uint64_t>(ix) * 0x8DA6B343u) ^
      (static_cast<std::uint64_t>(iy) * 0xD8163841u));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

/// Bilinear value noise.
inline double value_noise(double x, double y, std::uint64_t seed) {
  const double fx = std::floor(x), fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = smooth(x - fx), ty = smooth(y - fy);
  const double v00 = lattice_value(ix, iy, seed);
  const double v10 = lattice_value(ix + 1, iy, seed);
  const double v01 = lattice_value(ix, iy + 1, seed);
  const double v11 = lattice_value(ix + 1, iy + 1, seed);
  const double a = v00 + (v10 - v00) * tx;
  const double b = v01 + (v11 - v01) * tx;
  return a + (b - a) * ty;
}

/// Four-octave fractal value noise in [0, 1).
inline double fbm(double x, double y, std::uint64_t seed) {
  double sum = 0.0, amp = 0.5, freq = 1.0, norm = 0.0;
  for (int octave = 0; octave < 4; ++octave) {
    sum += amp * value_noise(x * freq, y * freq, seed + octave);
    norm += amp;
    amp *= 0.5;
    freq *= 2.0;
  }
  return sum / norm;
}

}  // namespace detail

/// Angular radius of the rendered Sun disk as a fraction of image width.
inline constexpr double kSunDiskFrac = 0.015;

/// Procedural stand-in for a rendered comet scene: gray-brown value-noise
/// terrain below a geometric horizon, a near-black sky gradient above it,
/// and a saturated Sun disk at the projected Sun pixel when it falls inside
/// the raster. Pure function of (vars, cam, rng seed); the Sun pixel is
/// returned even when it lies outside the raster so near-FoV straylight
/// geometry can anchor to it.
inline std::pair<ImageRGBI, SunPixel> render_background(const DatasetVariables& vars,
                                                        const CameraModel& cam,
                                                        SeededRng& rng) {
  const std::uint64_t terrain_seed = rng.next_u64();

  const Vec3 sun_local = sun_direction(vars.sun_azimuth, vars.sun_elevation);
  const Mat3 cam_from_local =
      attitude_rotation(vars.roll, vars.pitch, vars.yaw) * sun_datum_rotation(sun_local);
  const Mat3 local_from_cam = cam_from_local.transposed();
  const Vec3 sun_cam = (cam_from_local * sun_local).normalized();
  const SunPixel sun_px = project_sun(sun_cam, cam);

  // Horizontal Sun bearing for a simple illumination gradient across the
  // terrain; degenerate near zenith, where the gradient is dropped.
  Vec3 sun_horiz{sun_local.x, sun_local.y, 0.0};
  const bool has_bearing = sun_horiz.norm() > 1e-9;
  if (has_bearing) sun_horiz = sun_horiz.normalized();

  const double f = cam.focal_px();
  const double noise_scale = 0.35;
  const double ox = vars.position[0] * 0.11;
  const double oy = vars.position[1] * 0.11;

  ImageRGBI img(cam.width, cam.height);
  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      const Vec3 ray_cam = Vec3{(x - cam.cx()) / f, (y - cam.cy()) / f, 1.0}.normalized();
      const Vec3 ray_local = local_from_cam * ray_cam;

      double r, g, b;
      if (ray_local.z <= 0.0) {
        // Sky: Local-Level z is down, so negative z looks above the horizon.
        const double elevation = -ray_local.z;
        const double base = 4.0 + 22.0 * (1.0 - elevation) * (1.0 - elevation);
        r = base * 0.90;
        g = base * 0.95;
        b = base;
      } else {
        // Terrain: intersect a unit-depth ground plane and shade with
        // fractal noise, a distance haze, and the Sun-bearing gradient.
        const double depth = 1.0 / ray_local.z;
        const double gx = ray_local.x * depth;
        const double gy = ray_local.y * depth;
        const double n =
            detail::fbm(gx * noise_scale + ox, gy * noise_scale + oy, terrain_seed);
        double value = 40.0 + 150.0 * n;
        const double haze = std::clamp(depth / 40.0, 0.0, 1.0);
        value = value + (60.0 - value) * haze;
        if (has_bearing) {
          Vec3 ray_horiz{ray_local.x, ray_local.y, 0.0};
          if (ray_horiz.norm() > 1e-9) {
            ray_horiz = ray_horiz.normalized();
            value *= 0.75 + 0.25 * ray_horiz.dot(sun_horiz);
          }
        }
        r = value;
        g = value * 0.93;
        b = value * 0.80;
      }

      // Veiling glow around the Sun direction, capped below saturation so
      // no background pixel other than the disk reaches 255.
      if (!sun_px.behind) {
        const double angle = std::acos(std::clamp(ray_cam.dot(sun_cam), -1.0, 1.0));
        const double glow = 90.0 * std::exp(-(angle * angle) / (0.18 * 0.18));
        r += glow;
        g += glow;
        b += glow * 0.95;
      }

      // The disk itself is drawn only when the Sun pixel is inside the
      // raster, so Sun-averted frames never contain saturated disk pixels.
      if (sun_px.in_fov) {
        const double disk_radius = kSunDiskFrac * cam.width;
        const double d = std::hypot(x - sun_px.u, y - sun_px.v);
        if (d <= disk_radius + 1.0) {
          const double a = std::clamp((disk_radius + 1.0 - d) / 2.0, 0.0, 1.0);
          r = r + (255.0 - r) * a;
          g = g + (255.0 - g) * a;
          b = b + (255.0 - b) * a;
          img.at(x, y, kR) = static_cast<std::uint8_t>(std::lround(std::clamp(r, 0.0, 255.0)));
          img.at(x, y, kG) = static_cast<std::uint8_t>(std::lround(std::clamp(g, 0.0, 255.0)));
          img.at(x, y, kB) = static_cast<std::uint8_t>(std::lround(std::clamp(b, 0.0, 255.0)));
          img.refresh_intensity(x, y);
          continue;
        }
      }

      img.at(x, y, kR) = static_cast<std::uint8_t>(std::lround(std::clamp(r, 0.0, 250.0)));
      img.at(x, y, kG) = static_cast<std::uint8_t>(std::lround(std::clamp(g, 0.0, 250.0)));
      img.at(x, y, kB) = static_cast<std::uint8_t>(std::lround(std::clamp(b, 0.0, 250.0)));
      img.refresh_intensity(x, y);
    }
  }
  return {std::move(img), sun_px};
}

}  // namespace camfault::scene
