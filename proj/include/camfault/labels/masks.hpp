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

#include <cstdlib>
#include <span>
#include <stdexcept>

#include "camfault/core/image.hpp"

namespace camfault::labels {

/// Pixel-wise OR of per-class masks: the "any fault here" label.
inline FaultMask combined_mask(std::span<const FaultMask> masks) {
  if (masks.empty()) throw std::invalid_argument("combined_mask: no masks given");
  FaultMask out(masks[0].width(), masks[0].height());
  for (const FaultMask& m : masks) {
    if (!out.same_shape(m))
      throw std::invalid_argument("combined_mask: mask dimensions differ");
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x)
        if (m.get(x, y)) out.set(x, y);
  }
  return out;
}

/// Default threshold separating straylight from the rounding noise of
/// proportional channel rescaling.
inline constexpr int kStraylightTau = 2;

/// Isolates straylight by subtraction: the two renders differ only in the
/// flare pass, so any channel differing by at least tau marks straylight.
/// Sensor faults rendered in both images (e.g. a broken line crossing a
/// flare) cancel out and stay out of this label.
inline FaultMask straylight_mask(const ImageRGBI& with_flares,
                                 const ImageRGBI& without_flares, int tau = kStraylightTau) {
  if (with_flares.width() != without_flares.width() ||
      with_flares.height() != without_flares.height())
    throw std::invalid_argument("straylight_mask: image dimensions differ");

  FaultMask mask(with_flares.width(), with_flares.height());
  for (int y = 0; y < with_flares.height(); ++y) {
    for (int x = 0; x < with_flares.width(); ++x) {
      for (int c = 0; c < 4; ++c) {
        if (std::abs(int(with_flares.at(x, y, c)) - int(without_flares.at(x, y, c))) >= tau) {
          mask.set(x, y);
          break;
        }
      }
    }
  }
  return mask;
}

}  // namespace camfault::labels
