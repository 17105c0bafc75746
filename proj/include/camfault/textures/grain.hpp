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
#include <stdexcept>

#include "camfault/textures/texture.hpp"

namespace camfault::tex {

/// One dust grain: a bivariate Gaussian intensity drop. Bounds are the
/// dataset's dust parameter table; the cross covariance is fixed at zero.
struct GrainParams {
  double peak = 150.0;      // intensity-drop units, [100, 200]
  double sigma_xx = 4.0;    // pixels, [3, 6]
  double sigma_yy = 4.0;    // pixels, [3, 6]
  double sigma_xy = 0.0;    // fixed 0

  void validate() const {
    if (!(peak >= 100.0 && peak <= 200.0))
      throw std::invalid_argument("GrainParams: peak must lie in [100, 200]");
    if (!(sigma_xx >= 3.0 && sigma_xx <= 6.0))
      throw std::invalid_argument("GrainParams: sigma_xx must lie in [3, 6]");
    if (!(sigma_yy >= 3.0 && sigma_yy <= 6.0))
      throw std::invalid_argument("GrainParams: sigma_yy must lie in [3, 6]");
    if (sigma_xy != 0.0)
      throw std::invalid_argument("GrainParams: sigma_xy is fixed at 0");
  }

  bool operator==(const GrainParams&) const = default;
};

/// Side of the square grid a grain is generated on: 3-sigma support on the
/// wider axis, forced odd so the peak sits on a cell.
inline int grain_grid_side(const GrainParams& p) {
  return 2 * static_cast<int>(std::ceil(3.0 * std::max(p.sigma_xx, p.sigma_yy))) + 1;
}

/// Rasterizes one grain: peak * exp(-1/2 (dx^2/sxx^2 + dy^2/syy^2)) around
/// the grid center, with cells outside the grid's inscribed circle zeroed
/// (the corner removal that smooths blending with the background).
inline Texture dust_grain(const GrainParams& params) {
  params.validate();
  const int side = grain_grid_side(params);
  const int center = side / 2;
  const double radius2 = (side / 2.0) * (side / 2.0);

  Texture t(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double dx = x - center;
      const double dy = y - center;
      if (dx * dx + dy * dy > radius2) continue;
      const double e = 0.5 * (dx * dx / (params.sigma_xx * params.sigma_xx) +
                              dy * dy / (params.sigma_yy * params.sigma_yy));
      t.value(x, y) = static_cast<float>(params.peak * std::exp(-e));
    }
  }
  return t;
}

}  // namespace camfault::tex
