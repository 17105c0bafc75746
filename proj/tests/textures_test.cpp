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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "camfault/camfault.hpp"

namespace cf = camfault;
namespace tex = camfault::tex;

namespace {

/// Independent mass oracle: dense midpoint quadrature of the truncated
/// Gaussian over the grain's inscribed circle (16x16 sub-samples per cell).
double grain_mass_quadrature(const tex::GrainParams& p) {
  const int side = tex::grain_grid_side(p);
  const double center = side / 2;
  const double radius2 = (side / 2.0) * (side / 2.0);
  const int sub = 16;
  double sum = 0.0;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      for (int sy = 0; sy < sub; ++sy) {
        for (int sx = 0; sx < sub; ++sx) {
          const double px = x + (sx + 0.5) / sub - 0.5;
          const double py = y + (sy + 0.5) / sub - 0.5;
          const double dx = px - center;
          const double dy = py - center;
          if (dx * dx + dy * dy > radius2) continue;
          sum += p.peak *
                 std::exp(-0.5 * (dx * dx / (p.sigma_xx * p.sigma_xx) +
                                  dy * dy / (p.sigma_yy * p.sigma_yy))) /
                 (sub * sub);
        }
      }
    }
  }
  return sum;
}

double texture_sum(const tex::Texture& t) {
  double s = 0.0;
  for (float v : t.values) s += v;
  return s;
}

}  // namespace

TEST(DustGrain, ClosedFormValues) {
  tex::GrainParams p{200.0, 3.0, 3.0};
  const auto t = tex::dust_grain(p);
  const int c = t.width / 2;
  EXPECT_EQ(t.width, 19);  // 2*ceil(3*3)+1
  EXPECT_NEAR(t.value(c, c), 200.0, 1e-4);
  EXPECT_EQ(std::lround(t.value(c + 3, c)), 121);  // 200*exp(-0.5)
}

TEST(DustGrain, AnisotropicSymmetry) {
  tex::GrainParams p{100.0, 6.0, 3.0};
  const auto t = tex::dust_grain(p);
  const int c = t.width / 2;
  EXPECT_NEAR(t.value(c + 6, c), t.value(c, c + 3), 1e-4);
}

TEST(DustGrain, CornersRemoved) {
  tex::GrainParams p{200.0, 6.0, 6.0};
  const auto t = tex::dust_grain(p);
  EXPECT_EQ(t.value(0, 0), 0.0f);
  EXPECT_EQ(t.value(t.width - 1, 0), 0.0f);
  EXPECT_EQ(t.value(0, t.height - 1), 0.0f);
  EXPECT_EQ(t.value(t.width - 1, t.height - 1), 0.0f);
}

TEST(DustGrain, RejectsOutOfTableParams) {
  EXPECT_THROW(tex::dust_grain({99.0, 3.0, 3.0}), std::invalid_argument);
  EXPECT_THROW(tex::dust_grain({150.0, 2.9, 3.0}), std::invalid_argument);
  EXPECT_THROW(tex::dust_grain({150.0, 3.0, 6.1}), std::invalid_argument);
  EXPECT_THROW(tex::dust_grain({150.0, 3.0, 3.0, 0.5}), std::invalid_argument);
}

TEST(DustGrain, MassMatchesQuadratureOracle) {
  cf::SeededRng rng(13);
  for (int i = 0; i < 10; ++i) {
    tex::GrainParams p;
    p.peak = rng.uniform(100.0, 200.0);
    p.sigma_xx = rng.uniform(3.0, 6.0);
    p.sigma_yy = rng.uniform(3.0, 6.0);
    const double oracle = grain_mass_quadrature(p);
    const double sum = texture_sum(tex::dust_grain(p));
    EXPECT_NEAR(sum, oracle, 0.02 * oracle) << "peak=" << p.peak << " sxx=" << p.sigma_xx
                                            << " syy=" << p.sigma_yy;
  }
}

TEST(VignetteField, CenterEqualsE0) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const auto t = tex::vignette_field(255.0, cam);
  EXPECT_NEAR(t.value(512, 512), 255.0, 1e-4);
}

TEST(VignetteField, ThirtyDegreesIsExactlyNineSixteenths) {
  EXPECT_NEAR(tex::cos4_falloff(std::tan(std::numbers::pi / 6), 1.0), 0.5625, 1e-12);
}

TEST(VignetteField, CornerPixelValue) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const auto t = tex::vignette_field(255.0, cam);
  // corner (0,0): r = 724.08 px, theta = 42.02 deg, 255*cos^4 = 77.7
  EXPECT_EQ(std::lround(t.value(0, 0)), 78);
  EXPECT_NEAR(t.value(0, 0), 77.7, 0.2);
}

TEST(VignetteField, MonotoneAlongRays) {
  const cf::CameraModel cam(65.0, 256, 256);
  const auto t = tex::vignette_field(200.0, cam);
  for (int x = 129; x < 256; ++x) ASSERT_LE(t.value(x, 128), t.value(x - 1, 128) + 1e-6f);
  for (int d = 1; d < 128; ++d) ASSERT_LE(t.value(128 + d, 128 + d), t.value(127 + d, 127 + d) + 1e-6f);
}

TEST(VignetteField, MatchesCos4AtRandomPixels) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const double f = cam.focal_px();
  const auto t = tex::vignette_field(255.0, cam);
  cf::SeededRng rng(21);
  for (int i = 0; i < 100; ++i) {
    const int x = static_cast<int>(rng.bounded(1024));
    const int y = static_cast<int>(rng.bounded(1024));
    const double r = std::hypot(x - 512.0, y - 512.0);
    const double expected = std::pow(std::cos(std::atan(r / f)), 4.0);
    ASSERT_LT(std::abs(t.value(x, y) / 255.0 - expected), 1.0 / 255.0);
  }
}

TEST(GaussianKernel, NormalizedAndUnimodal) {
  for (int size = 3; size <= 17; size += 2) {
    const auto k = tex::gaussian_kernel(size);
    double sum2d = 0.0;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) sum2d += k.at2d(i, j);
    EXPECT_NEAR(sum2d, 1.0, 1e-9) << "size " << size;
    const int c = size / 2;
    for (int i = 0; i < size; ++i) EXPECT_LE(k.weights[i], k.weights[c]);
    // symmetric under 90-degree rotation
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) EXPECT_DOUBLE_EQ(k.at2d(i, j), k.at2d(j, size - 1 - i));
  }
}

TEST(GaussianKernel, RejectsBadSizes) {
  EXPECT_THROW(tex::gaussian_kernel(2), std::invalid_argument);
  EXPECT_THROW(tex::gaussian_kernel(4), std::invalid_argument);
  EXPECT_THROW(tex::gaussian_kernel(1), std::invalid_argument);
  EXPECT_THROW(tex::gaussian_kernel(19), std::invalid_argument);
}

TEST(Convolve, PreservesConstantImages) {
  const cf::ImageRGBI img(64, 64, {100, 100, 100, 100});
  for (int size = 3; size <= 17; size += 2) {
    const auto out = tex::convolve_replicate(img, tex::gaussian_kernel(size));
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x)
        for (int c = 0; c < 4; ++c)
          ASSERT_NEAR(out.at(x, y, c), 100, 1) << "size " << size;
  }
}

TEST(Convolve, ImpulseResponseMatchesKernelCenter) {
  cf::ImageRGBI img(31, 31, {0, 0, 0, 0});
  for (int c = 0; c < 4; ++c) img.at(15, 15, c) = 255;
  const auto k = tex::gaussian_kernel(3);
  const auto out = tex::convolve_replicate(img, k);
  const long expected = std::lround(255.0 * k.at2d(1, 1));
  EXPECT_EQ(out.at(15, 15, cf::kR), expected);
}

TEST(FlarePrimitives, FilledOrbHasMonotoneRadialProfile) {
  // Scan the analytic profile along a row through the center.
  double prev = 1e9;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    const auto rgb = tex::flare_sample(1, r, 0.0);
    const double v = std::max({rgb[0], rgb[1], rgb[2]});
    ASSERT_LE(v, prev + 1e-6);
    prev = v;
  }
}

TEST(FlarePrimitives, RingIsHollow) {
  const auto center = tex::flare_sample(6, 0.0, 0.0);
  EXPECT_LT(std::max({center[0], center[1], center[2]}), 1.0);
  const auto annulus = tex::flare_sample(6, 0.62, 0.0);
  EXPECT_GT(std::max({annulus[0], annulus[1], annulus[2]}), 200.0);
}

TEST(FlarePrimitives, SupportLimitedToUnitDisk) {
  cf::SeededRng rng(5);
  for (int index = 1; index <= 10; ++index) {
    for (int i = 0; i < 200; ++i) {
      const double angle = rng.uniform(0, 2 * std::numbers::pi);
      const double r = rng.uniform(1.0001, 3.0);
      const auto rgb = tex::flare_sample(index, r * std::cos(angle), r * std::sin(angle));
      ASSERT_EQ(rgb[0], 0.0f);
      ASSERT_EQ(rgb[1], 0.0f);
      ASSERT_EQ(rgb[2], 0.0f);
    }
  }
}

TEST(FlarePrimitives, PeakChannelNear255) {
  for (int index = 1; index <= 10; ++index) {
    const auto t = tex::flare_primitive(index);
    float peak = 0.0f;
    for (float v : t.values) peak = std::max(peak, v);
    EXPECT_GE(peak, 250.0f) << "index " << index;
    EXPECT_LE(peak, 255.0f) << "index " << index;
  }
}

TEST(FlarePrimitives, GroupAssignment) {
  for (int i = 1; i <= 5; ++i) EXPECT_EQ(tex::flare_group(i), tex::FlareGroup::kClose);
  for (int i = 6; i <= 10; ++i) EXPECT_EQ(tex::flare_group(i), tex::FlareGroup::kFar);
  EXPECT_THROW(tex::flare_group(0), std::invalid_argument);
  EXPECT_THROW(tex::flare_group(11), std::invalid_argument);
  EXPECT_THROW(tex::flare_sample(11, 0, 0), std::invalid_argument);
}

TEST(GlarePrimitives, CenteredPeakAndFastDecay) {
  for (int index = 1; index <= 2; ++index) {
    const auto center = tex::glare_sample(index, 0.0, 0.0);
    const double peak = std::max({center[0], center[1], center[2]});
    EXPECT_NEAR(peak, 255.0, 1.0);
    for (double angle = 0.0; angle < 6.28; angle += 0.37) {
      const auto rim = tex::glare_sample(index, 0.9999 * std::cos(angle), 0.9999 * std::sin(angle));
      const double v = std::max({rim[0], rim[1], rim[2]});
      ASSERT_LT(v, 0.05 * peak) << "index " << index << " angle " << angle;
    }
  }
  EXPECT_THROW(tex::glare_sample(3, 0, 0), std::invalid_argument);
}

TEST(GlarePrimitives, VariantsDifferOverSupport) {
  const auto a = tex::glare_primitive(1);
  const auto b = tex::glare_primitive(2);
  int support = 0, differing = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] > 0.5f || b.values[i] > 0.5f) {
      ++support;
      if (std::abs(a.values[i] - b.values[i]) > 0.5f) ++differing;
    }
  }
  EXPECT_GT(differing, support / 10);
}
