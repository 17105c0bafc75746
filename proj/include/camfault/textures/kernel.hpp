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
#include <vector>

#include "camfault/core/image.hpp"

namespace camfault::tex {

/// Separable Gaussian blur kernel. weights holds the 1-D profile,
/// normalized to sum 1; the 2-D kernel is its outer product.
struct GaussianKernel {
  int size = 3;
  std::vector<double> weights;

  double at2d(int i, int j) const { return weights[i] * weights[j]; }
};

/// Builds the blur kernel for an odd size in [3, 17]. Sigma is tied to the
/// size (size/6) so the kernel keeps one degree of freedom.
inline GaussianKernel gaussian_kernel(int size) {
  if (size < 3 || size > 17 || size % 2 == 0)
    throw std::invalid_argument("gaussian_kernel: size must be odd and in [3, 17]");
  const double sigma = size / 6.0;
  const int center = size / 2;
  GaussianKernel k;
  k.size = size;
  k.weights.resize(size);
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    k.weights[i] = std::exp(-0.5 * d * d / (sigma * sigma));
    sum += k.weights[i];
  }
  for (double& w : k.weights) w /= sum;
  return k;
}

/// Convolves all four channels with the kernel, replicating edge values at
/// the borders. Quantization happens once, after both separable passes.
inline ImageRGBI convolve_replicate(const ImageRGBI& img, const GaussianKernel& kernel) {
  const int w = img.width(), h = img.height();
  const int c0 = kernel.size / 2;

  std::vector<double> horizontal(static_cast<std::size_t>(w) * h * 4);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < kernel.size; ++k) {
          const int xs = std::clamp(x + k - c0, 0, w - 1);
          acc += kernel.weights[k] * img.at(xs, y, c);
        }
        horizontal[(static_cast<std::size_t>(y) * w + x) * 4 + c] = acc;
      }
    }
  }

  ImageRGBI out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < kernel.size; ++k) {
          const int ys = std::clamp(y + k - c0, 0, h - 1);
          acc += kernel.weights[k] * horizontal[(static_cast<std::size_t>(ys) * w + x) * 4 + c];
        }
        out.at(x, y, c) =
            static_cast<std::uint8_t>(std::clamp<long>(std::lround(acc), 0, 255));
      }
    }
  }
  return out;
}

}  // namespace camfault::tex
