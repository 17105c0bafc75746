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
#include <filesystem>
#include <unordered_set>

#include "camfault/camfault.hpp"

namespace cf = camfault;

TEST(SaturatingAdd, ClampsBothEnds) {
  EXPECT_EQ(cf::saturating_add(250, 20), 255);
  EXPECT_EQ(cf::saturating_add(10, -30), 0);
  EXPECT_EQ(cf::saturating_add(100, 55), 155);
}

TEST(SaturatingAdd, StaysInRangeForAllInputs) {
  for (int v = 0; v <= 255; v += 5) {
    for (int d = -600; d <= 600; d += 7) {
      const int r = cf::saturating_add(static_cast<std::uint8_t>(v), d);
      EXPECT_GE(r, 0);
      EXPECT_LE(r, 255);
    }
  }
}

TEST(IntensityOf, MeanOfChannels) {
  EXPECT_EQ(cf::intensity_of(0, 0, 0), 0);
  EXPECT_EQ(cf::intensity_of(255, 255, 255), 255);
  EXPECT_EQ(cf::intensity_of(30, 60, 90), 60);
}

TEST(NewImage, UniformFill) {
  const auto img = cf::new_image(2, 2, {0, 0, 0, 0});
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x)
      for (int c = 0; c < 4; ++c) EXPECT_EQ(img.at(x, y, c), 0);

  const auto big = cf::new_image(1024, 1024, {10, 20, 30, 20});
  EXPECT_EQ(big.width(), 1024);
  EXPECT_EQ(big.at(511, 800, cf::kB), 30);
}

TEST(NewImage, RejectsDegenerateDimensions) {
  EXPECT_THROW(cf::new_image(0, 5, {0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(cf::new_image(5, -1, {0, 0, 0, 0}), std::invalid_argument);
}

TEST(CameraModel, FocalLengthFromFov) {
  const cf::CameraModel cam(65.0, 1024, 1024);
  EXPECT_NEAR(cam.focal_px(), 803.68, 0.01);
  EXPECT_THROW(cf::CameraModel(0.0, 10, 10), std::invalid_argument);
  EXPECT_THROW(cf::CameraModel(180.0, 10, 10), std::invalid_argument);
}

TEST(SeededRng, EqualSeedsGiveEqualStreams) {
  cf::SeededRng a(12345), b(12345);
  for (int i = 0; i < 1000000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRng, SubSeedsCollisionFreeOverAMillionIndices) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1 << 21);
  for (std::uint64_t i = 0; i < 1000000; ++i)
    ASSERT_TRUE(seen.insert(cf::mix_seed(0xDEADBEEFull, i)).second) << "collision at " << i;
}

TEST(SeededRng, UniformIntCoversInclusiveRange) {
  cf::SeededRng rng(7);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform_int(3, 17);
    ASSERT_GE(v, 3);
    ASSERT_LE(v, 17);
    saw_lo |= v == 3;
    saw_hi |= v == 17;
  }
  EXPECT_TRUE(saw_lo);
  EXPECT_TRUE(saw_hi);
}

TEST(SeededRng, NextDoubleInUnitInterval) {
  cf::SeededRng rng(99);
  for (int i = 0; i < 100000; ++i) {
    const double v = rng.next_double();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(PngIo, ImageRoundTripPreservesAllChannels) {
  cf::ImageRGBI img(33, 21);
  cf::SeededRng rng(5);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < 4; ++c)
        img.at(x, y, c) = static_cast<std::uint8_t>(rng.bounded(256));

  const auto path = std::filesystem::temp_directory_path() / "camfault_roundtrip.png";
  cf::write_rgbi_png(img, path);
  const auto back = cf::read_rgbi_png(path);
  EXPECT_EQ(img, back);
  std::filesystem::remove(path);
}

TEST(PngIo, MaskRoundTrip) {
  cf::FaultMask mask(17, 9);
  mask.set(3, 4);
  mask.set(16, 8);
  const auto path = std::filesystem::temp_directory_path() / "camfault_mask.png";
  cf::write_mask_png(mask, path);
  EXPECT_EQ(cf::read_mask_png(path), mask);
  std::filesystem::remove(path);
}

TEST(PngIo, MissingFileRaisesIoError) {
  EXPECT_THROW(cf::read_rgbi_png("/nonexistent/nowhere.png"), cf::IoError);
}

TEST(ImageRGBI, IntensityScalingPreservesHue) {
  cf::ImageRGBI img(1, 1, {100, 50, 150, 100});
  img.set_intensity_scaled(0, 0, 50);
  EXPECT_EQ(img.at(0, 0, cf::kI), 50);
  EXPECT_EQ(img.at(0, 0, cf::kR), 50);
  EXPECT_EQ(img.at(0, 0, cf::kG), 25);
  EXPECT_EQ(img.at(0, 0, cf::kB), 75);
}

TEST(ImageRGBI, ZeroIntensityMapsColorToBlack) {
  cf::ImageRGBI img(1, 1, {10, 20, 30, 0});
  img.set_intensity_scaled(0, 0, 120);
  EXPECT_EQ(img.at(0, 0, cf::kI), 120);
  EXPECT_EQ(img.at(0, 0, cf::kR), 0);
  EXPECT_EQ(img.at(0, 0, cf::kG), 0);
  EXPECT_EQ(img.at(0, 0, cf::kB), 0);
}
