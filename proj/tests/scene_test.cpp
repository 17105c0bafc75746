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
#include <vector>

#include "camfault/camfault.hpp"

namespace cf = camfault;
namespace scene = camfault::scene;

namespace {

constexpr double kPi = std::numbers::pi;

/// Chi-squared statistic of `values` against the uniform distribution on
/// [lo, hi) with equal-width bins.
double chi_square_uniform(const std::vector<double>& values, double lo, double hi, int bins) {
  std::vector<int> counts(bins, 0);
  int n = 0;
  for (double v : values) {
    if (v < lo || v >= hi) continue;
    const int b = std::min(bins - 1, static_cast<int>((v - lo) / (hi - lo) * bins));
    ++counts[b];
    ++n;
  }
  const double expected = static_cast<double>(n) / bins;
  double stat = 0.0;
  for (int c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

// 0.99 quantiles of the chi-squared distribution.
constexpr double kChi2Crit19 = 36.191;  // 20 bins
constexpr double kChi2Crit15 = 30.578;  // 16 bins

}  // namespace

TEST(SunDirection, HorizonNorth) {
  const auto d = scene::sun_direction(0.0, 0.0);
  EXPECT_NEAR(d.x, 1.0, 1e-12);
  EXPECT_NEAR(d.y, 0.0, 1e-12);
  EXPECT_NEAR(d.z, 0.0, 1e-12);
}

TEST(SunDirection, ZenithOpposesGravity) {
  const auto d = scene::sun_direction(0.0, kPi / 2);
  EXPECT_NEAR(d.x, 0.0, 1e-12);
  EXPECT_NEAR(d.y, 0.0, 1e-12);
  EXPECT_NEAR(d.z, -1.0, 1e-12);
}

TEST(SunDirection, TrigonometricEvaluation) {
  const auto d = scene::sun_direction(kPi / 2, kPi / 6);
  EXPECT_NEAR(d.x, 0.0, 1e-5);
  EXPECT_NEAR(d.y, 0.86603, 1e-5);
  EXPECT_NEAR(d.z, -0.5, 1e-12);
}

TEST(SunDirection, UnitNormEverywhere) {
  cf::SeededRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto d = scene::sun_direction(rng.uniform(0, 2 * kPi), rng.uniform(-kPi / 2, kPi / 2));
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
  }
}

TEST(AttitudeRotation, IdentityAtZero) {
  const auto r = scene::attitude_rotation(0, 0, 0);
  EXPECT_LT(r.max_abs_diff(scene::Mat3::identity()), 1e-15);
}

TEST(AttitudeRotation, HalfTurnRollIsInvolution) {
  const auto r = scene::attitude_rotation(kPi, 0, 0);
  EXPECT_LT((r * r).max_abs_diff(scene::Mat3::identity()), 1e-12);
}

TEST(AttitudeRotation, OrthonormalWithUnitDeterminant) {
  cf::SeededRng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto r = scene::attitude_rotation(rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi),
                                            rng.uniform(0, 2 * kPi));
    EXPECT_LT((r * r.transposed()).max_abs_diff(scene::Mat3::identity()), 1e-12);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(ProjectSun, BoresightHitsCenter) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const auto px = scene::project_sun({0, 0, 1}, cam);
  EXPECT_NEAR(px.u, 512.0, 1e-12);
  EXPECT_NEAR(px.v, 512.0, 1e-12);
  EXPECT_TRUE(px.in_fov);
  EXPECT_FALSE(px.behind);
}

TEST(ProjectSun, HalfFovLandsOnHalfOpenEdge) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const double a = 32.5 * kPi / 180.0;
  const auto px = scene::project_sun(scene::Vec3{std::sin(a), 0, std::cos(a)}.normalized(), cam);
  EXPECT_NEAR(px.u, 1024.0, 1e-9);
  EXPECT_NEAR(px.v, 512.0, 1e-9);
  EXPECT_FALSE(px.in_fov);  // half-open raster bound
}

TEST(ProjectSun, AntiBoresightIsBehind) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const auto px = scene::project_sun({0, 0, -1}, cam);
  EXPECT_TRUE(px.behind);
  EXPECT_FALSE(px.in_fov);
}

TEST(ProjectSun, RejectsNonUnitInput) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  EXPECT_THROW(scene::project_sun({0, 0, 2}, cam), std::invalid_argument);
}

TEST(SunGeometry, ZeroAttitudeCentersTheSunForAnyYaw) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  cf::SeededRng rng(17);
  for (int i = 0; i < 200; ++i) {
    scene::DatasetVariables vars;
    vars.sun_azimuth = rng.uniform(0, 2 * kPi);
    vars.sun_elevation = rng.uniform(-kPi / 6, kPi / 6);
    vars.yaw = rng.uniform(0, 2 * kPi);
    const auto px = scene::sun_pixel_for(vars, cam);
    ASSERT_NEAR(px.u, 512.0, 1e-9);
    ASSERT_NEAR(px.v, 512.0, 1e-9);
  }
}

TEST(SampleVariables, FacingBoundsAtSeed42) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  cf::SeededRng rng(42);
  const auto v = scene::sample_variables(scene::Stage::kSunFacing, cam, rng);
  const double h = cam.fov_rad() / 2;
  EXPECT_GT(v.sun_elevation, -kPi / 6);
  EXPECT_LT(v.sun_elevation, kPi / 6);
  EXPECT_GT(v.roll, -h);
  EXPECT_LT(v.roll, h);
  EXPECT_GT(v.pitch, -h);
  EXPECT_LT(v.pitch, h);
  EXPECT_EQ(v.stage, scene::Stage::kSunFacing);
}

TEST(SampleVariables, AvertedBoundsAtSeed42) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  cf::SeededRng rng(42);
  const auto v = scene::sample_variables(scene::Stage::kSunAverted, cam, rng);
  const double h = cam.fov_rad() / 2;
  EXPECT_GT(v.roll, h);
  EXPECT_LT(v.roll, 2 * kPi - h);
  EXPECT_GT(v.pitch, h);
  EXPECT_LT(v.pitch, 2 * kPi - h);
}

TEST(SampleVariables, AllFieldsInsideBoundsOver100kDraws) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const double h = cam.fov_rad() / 2;
  cf::SeededRng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const auto stage = i % 2 == 0 ? scene::Stage::kSunFacing : scene::Stage::kSunAverted;
    const auto v = scene::sample_variables(stage, cam, rng);
    ASSERT_GT(v.sun_azimuth, 0.0);
    ASSERT_LT(v.sun_azimuth, 2 * kPi);
    ASSERT_GT(v.yaw, 0.0);
    ASSERT_LT(v.yaw, 2 * kPi);
    ASSERT_GT(v.sun_elevation, -kPi / 6);
    ASSERT_LT(v.sun_elevation, stage == scene::Stage::kSunFacing ? kPi / 6 : kPi / 2);
    if (stage == scene::Stage::kSunFacing) {
      ASSERT_GT(v.roll, -h);
      ASSERT_LT(v.roll, h);
      ASSERT_GT(v.pitch, -h);
      ASSERT_LT(v.pitch, h);
    } else {
      ASSERT_GT(v.roll, h);
      ASSERT_LT(v.roll, 2 * kPi - h);
      ASSERT_GT(v.pitch, h);
      ASSERT_LT(v.pitch, 2 * kPi - h);
    }
    ASSERT_GT(v.position[0], -150.0);
    ASSERT_LT(v.position[0], 150.0);
    ASSERT_GT(v.position[1], -150.0);
    ASSERT_LT(v.position[1], 150.0);
    ASSERT_GT(v.position[2], 0.0);
    ASSERT_LT(v.position[2], 100.0);
  }
}

TEST(SampleVariables, FacingFieldsAreUniform) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  const double h = cam.fov_rad() / 2;
  cf::SeededRng rng(123);
  std::vector<double> az, el, roll, pitch, yaw, px, py, pz;
  for (int i = 0; i < 10000; ++i) {
    const auto v = scene::sample_variables(scene::Stage::kSunFacing, cam, rng);
    az.push_back(v.sun_azimuth);
    el.push_back(v.sun_elevation);
    roll.push_back(v.roll);
    pitch.push_back(v.pitch);
    yaw.push_back(v.yaw);
    px.push_back(v.position[0]);
    py.push_back(v.position[1]);
    pz.push_back(v.position[2]);
  }
  EXPECT_LT(chi_square_uniform(az, 0, 2 * kPi, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(el, -kPi / 6, kPi / 6, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(roll, -h, h, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(pitch, -h, h, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(yaw, 0, 2 * kPi, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(px, -150, 150, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(py, -150, 150, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(pz, 0, 100, 20), kChi2Crit19);
}

TEST(SampleVariables, AvertedFieldsAreUniformOutsideTheRedrawBand) {
  // Roll/pitch pairs that would re-point the camera at the Sun (both angles
  // near pi) are redrawn, so those marginals are tested on sub-ranges the
  // redraw cannot touch; the unconstrained fields are tested in full.
  const cf::CameraModel cam(65.0, 1024, 1024);
  const double h = cam.fov_rad() / 2;
  cf::SeededRng rng(321);
  std::vector<double> az, el, roll, pitch, yaw;
  for (int i = 0; i < 10000; ++i) {
    const auto v = scene::sample_variables(scene::Stage::kSunAverted, cam, rng);
    az.push_back(v.sun_azimuth);
    el.push_back(v.sun_elevation);
    roll.push_back(v.roll);
    pitch.push_back(v.pitch);
    yaw.push_back(v.yaw);
  }
  EXPECT_LT(chi_square_uniform(az, 0, 2 * kPi, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(el, -kPi / 6, kPi / 2, 20), kChi2Crit19);
  EXPECT_LT(chi_square_uniform(yaw, 0, 2 * kPi, 20), kChi2Crit19);
  const double band_lo = 140.0 * kPi / 180.0;
  const double band_hi = 220.0 * kPi / 180.0;
  EXPECT_LT(chi_square_uniform(roll, h, band_lo, 16), kChi2Crit15);
  EXPECT_LT(chi_square_uniform(roll, band_hi, 2 * kPi - h, 16), kChi2Crit15);
  EXPECT_LT(chi_square_uniform(pitch, h, band_lo, 16), kChi2Crit15);
  EXPECT_LT(chi_square_uniform(pitch, band_hi, 2 * kPi - h, 16), kChi2Crit15);
}

TEST(SampleVariables, StageGeometryContracts) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  cf::SeededRng rng(55);
  for (int i = 0; i < 2000; ++i) {
    const auto facing = scene::sample_variables(scene::Stage::kSunFacing, cam, rng);
    ASSERT_TRUE(scene::sun_within_margin(scene::sun_pixel_for(facing, cam), cam));
    const auto averted = scene::sample_variables(scene::Stage::kSunAverted, cam, rng);
    ASSERT_FALSE(scene::sun_pixel_for(averted, cam).in_fov);
  }
}

TEST(StratifiedPlan, SplitsFacingPrefix) {
  const auto plan = scene::stratified_plan(10, 0.3);
  ASSERT_EQ(plan.size(), 10u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(plan[i], scene::Stage::kSunFacing);
  for (int i = 3; i < 10; ++i) EXPECT_EQ(plan[i], scene::Stage::kSunAverted);
}

TEST(StratifiedPlan, DegenerateFractions) {
  for (const auto s : scene::stratified_plan(5, 0.0)) EXPECT_EQ(s, scene::Stage::kSunAverted);
  for (const auto s : scene::stratified_plan(5, 1.0)) EXPECT_EQ(s, scene::Stage::kSunFacing);
  EXPECT_THROW(scene::stratified_plan(5, 1.2), std::invalid_argument);
  EXPECT_THROW(scene::stratified_plan(5, -0.1), std::invalid_argument);
}

TEST(RenderBackground, SunOnBoresightPaintsSaturatedDiskAtCenter) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  scene::DatasetVariables vars;
  vars.sun_azimuth = 0.4;
  vars.sun_elevation = 0.1;
  vars.roll = 0.0;
  vars.pitch = 0.0;
  vars.yaw = 1.0;
  vars.stage = scene::Stage::kSunFacing;
  cf::SeededRng rng(9);
  const auto [img, sun] = scene::render_background(vars, cam, rng);
  EXPECT_NEAR(sun.u, 512.0, 1e-9);
  EXPECT_NEAR(sun.v, 512.0, 1e-9);
  EXPECT_TRUE(sun.in_fov);
  EXPECT_EQ(img.at(512, 512, cf::kI), 255);
  EXPECT_EQ(img.at(512, 512, cf::kR), 255);
}

TEST(RenderBackground, AvertedFramesNeverSaturate) {
  const cf::CameraModel cam(65.0, 256, 256);
  cf::SeededRng var_rng(31);
  for (int i = 0; i < 5; ++i) {
    const auto vars = scene::sample_variables(scene::Stage::kSunAverted, cam, var_rng);
    cf::SeededRng rng(100 + i);
    const auto [img, sun] = scene::render_background(vars, cam, rng);
    EXPECT_FALSE(sun.in_fov);
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x)
        for (int c = 0; c < 4; ++c) ASSERT_LT(img.at(x, y, c), 255);
  }
}

TEST(RenderBackground, DeterministicInSeed) {
  const cf::CameraModel cam(65.0, 128, 128);
  cf::SeededRng var_rng(77);
  const auto vars = scene::sample_variables(scene::Stage::kSunFacing, cam, var_rng);
  cf::SeededRng rng_a(5), rng_b(5), rng_c(6);
  const auto a = scene::render_background(vars, cam, rng_a);
  const auto b = scene::render_background(vars, cam, rng_b);
  const auto c = scene::render_background(vars, cam, rng_c);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_NE(a.first, c.first);  // terrain noise reseeded
}
