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
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "camfault/textures/texture.hpp"

namespace camfault::tex {

enum class FlareGroup { kClose, kFar };

/// The ten flare primitives split in two groups: indices 1-5 render close
/// to the light source as dense forms (orbs, soft halos), indices 6-10
/// render far from it as sparse forms (rings, ring pairs, hexagon irises).
inline FlareGroup flare_group(int index) {
  if (index < 1 || index > 10)
    throw std::invalid_argument("flare index must lie in [1, 10]");
  return index <= 5 ? FlareGroup::kClose : FlareGroup::kFar;
}

namespace detail {

inline double gauss(double d, double w) { return std::exp(-(d * d) / (w * w)); }

/// Radius of a regular hexagon boundary (apothem h, rotated by alpha) along
/// the bearing of a point; |r - hex_radius| then profiles an iris outline.
inline double hex_radius(double nx, double ny, double apothem, double alpha) {
  constexpr double kSector = std::numbers::pi / 3.0;
  double a = std::atan2(ny, nx) - alpha;
  a = std::fmod(std::fmod(a, kSector) + kSector, kSector) - kSector / 2.0;
  return apothem / std::cos(a);
}

inline std::array<float, 3> tinted(double p, double tr, double tg, double tb) {
  return {static_cast<float>(255.0 * p * tr), static_cast<float>(255.0 * p * tg),
          static_cast<float>(255.0 * p * tb)};
}

}  // namespace detail

/// Evaluates flare primitive `index` at normalized offset (nx, ny) from its
/// center; the support is the unit disk and the brightest channel peaks at
/// 255 before any brightness scaling.
inline std::array<float, 3> flare_sample(int index, double nx, double ny) {
  const double r2 = nx * nx + ny * ny;
  if (index < 1 || index > 10)
    throw std::invalid_argument("flare index must lie in [1, 10]");
  if (r2 > 1.0) return {0, 0, 0};
  const double r = std::sqrt(r2);

  using detail::gauss;
  switch (index) {
    case 1: {  // warm filled orb, smooth radial falloff
      const double p = (1.0 - r2) * (1.0 - r2);
      return detail::tinted(p, 1.0, 0.85, 0.60);
    }
    case 2: {  // wide bluish orb
      const double p = gauss(r, 0.45);
      return detail::tinted(p, 0.65, 0.80, 1.0);
    }
    case 3: {  // violet orb with a hot core
      const double p = 0.35 * (1.0 - r) * (1.0 - r) + 0.65 * gauss(r, 0.18);
      return detail::tinted(p, 0.90, 0.70, 1.0);
    }
    case 4: {  // teal plateau halo
      const double q = (r / 0.5) * (r / 0.5);
      const double p = 1.0 / (1.0 + q * q);
      return detail::tinted(p, 0.70, 1.0, 0.90);
    }
    case 5: {  // amber orb, hue drifting toward the rim
      const double p = (1.0 - r2) * gauss(r, 0.60);
      const double tg = 0.80 - 0.30 * r;
      const double tb = 0.55 - 0.25 * r;
      return detail::tinted(p, 1.0, tg, tb);
    }
    case 6: {  // thin ring
      const double p = gauss(r - 0.62, 0.05);
      return detail::tinted(p, 1.0, 0.90, 0.75);
    }
    case 7: {  // concentric ring pair
      const double p = gauss(r - 0.45, 0.04) + 0.7 * gauss(r - 0.78, 0.05);
      return detail::tinted(std::min(p, 1.0), 0.80, 0.90, 1.0);
    }
    case 8: {  // hexagonal iris outline
      const double rh = detail::hex_radius(nx, ny, 0.60, 0.0);
      const double p = gauss(r - rh, 0.035);
      return detail::tinted(p, 0.85, 0.95, 1.0);
    }
    case 9: {  // wide ring with asymmetric falloff and radial hue shift
      const double w = r < 0.55 ? 0.10 : 0.16;
      const double p = gauss(r - 0.55, w);
      const double t = std::clamp(r, 0.0, 1.0);
      return detail::tinted(p, 0.60 + 0.40 * t, 0.85 - 0.15 * t, 1.0);
    }
    case 10: {  // small rotated hexagon outline
      const double rh = detail::hex_radius(nx, ny, 0.42, std::numbers::pi / 6.0);
      const double p = gauss(r - rh, 0.025);
      return detail::tinted(p, 1.0, 0.85, 0.90);
    }
    default:
      return {0, 0, 0};
  }
}

/// Evaluates glare primitive `index` (1 isotropic haze, 2 horizontal streak
/// haze) at normalized offset from the light source. Wide, low-frequency,
/// and below 5% of peak at the unit radius.
inline std::array<float, 3> glare_sample(int index, double nx, double ny) {
  if (index < 1 || index > 2)
    throw std::invalid_argument("glare index must lie in [1, 2]");
  const double r2 = nx * nx + ny * ny;
  if (r2 > 1.0) return {0, 0, 0};
  const double r = std::sqrt(r2);

  double p;
  if (index == 1) {
    p = detail::gauss(r, 0.30);
  } else {
    const double streak = std::exp(-(nx * nx) / (0.45 * 0.45) - (ny * ny) / (0.06 * 0.06));
    p = std::max(streak, 0.15 * detail::gauss(r, 0.30));
  }
  return detail::tinted(p, 1.0, 0.97, 0.90);
}

namespace detail {

template <typename Sampler>
Texture rasterize_unit(Sampler&& sample, int side) {
  Texture t(side, side, /*with_rgb=*/true);
  const double center = (side - 1) / 2.0;
  const double radius = (side - 1) / 2.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const auto rgb = sample((x - center) / radius, (y - center) / radius);
      t.color(x, y) = rgb;
      t.value(x, y) = std::max({rgb[0], rgb[1], rgb[2]});
    }
  }
  return t;
}

}  // namespace detail

inline constexpr int kPrimitiveRasterSide = 257;

/// Unit-radius raster of one flare primitive (inspection/export form; the
/// injector samples the analytic profile directly at its target radius).
inline Texture flare_primitive(int index) {
  return detail::rasterize_unit(
      [index](double nx, double ny) { return flare_sample(index, nx, ny); },
      kPrimitiveRasterSide);
}

inline Texture glare_primitive(int index) {
  return detail::rasterize_unit(
      [index](double nx, double ny) { return glare_sample(index, nx, ny); },
      kPrimitiveRasterSide);
}

}  // namespace camfault::tex
