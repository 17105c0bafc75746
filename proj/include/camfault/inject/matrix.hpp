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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "camfault/core/rng.hpp"

namespace camfault::inject {

/// Fault taxonomy, in injection-matrix row order. Straylight occupies the
/// last row: its flags are tied to the Sun-facing acquisition stage rather
/// than drawn with the other classes.
enum class FaultClass : int {
  kDust = 0,
  kBrokenPixels = 1,
  kBrokenLines = 2,
  kVignetting = 3,
  kOpticsDegradation = 4,
  kStraylight = 5,
};

inline constexpr int kFaultClassCount = 6;

inline const char* fault_class_name(FaultClass c) {
  switch (c) {
    case FaultClass::kDust: return "dust";
    case FaultClass::kBrokenPixels: return "broken_pixels";
    case FaultClass::kBrokenLines: return "broken_lines";
    case FaultClass::kVignetting: return "vignetting";
    case FaultClass::kOpticsDegradation: return "optics_degradation";
    case FaultClass::kStraylight: return "straylight";
  }
  return "?";
}

inline FaultClass fault_class_from_name(const std::string& name) {
  for (int i = 0; i < kFaultClassCount; ++i)
    if (name == fault_class_name(static_cast<FaultClass>(i)))
      return static_cast<FaultClass>(i);
  throw std::invalid_argument("unknown fault class: " + name);
}

/// Boolean matrix commanding which faults appear in which sample,
/// #fault classes rows by #samples columns.
class InjectionMatrix {
 public:
  InjectionMatrix() = default;
  explicit InjectionMatrix(int n_total)
      : n_total_(n_total), flags_(static_cast<std::size_t>(kFaultClassCount) * n_total, 0) {
    if (n_total < 0) throw std::invalid_argument("InjectionMatrix: n_total must be >= 0");
  }

  int n_total() const { return n_total_; }
  int n_straylight() const { return n_straylight_; }
  void set_n_straylight(int n) { n_straylight_ = n; }

  bool get(FaultClass c, int sample) const {
    return flags_[static_cast<std::size_t>(static_cast<int>(c)) * n_total_ + sample] != 0;
  }
  void set(FaultClass c, int sample, bool v) {
    flags_[static_cast<std::size_t>(static_cast<int>(c)) * n_total_ + sample] = v ? 1 : 0;
  }

  int class_count(FaultClass c) const {
    int n = 0;
    for (int i = 0; i < n_total_; ++i) n += get(c, i) ? 1 : 0;
    return n;
  }

 private:
  int n_total_ = 0;
  int n_straylight_ = 0;
  std::vector<std::uint8_t> flags_;
};

/// Number of Sun-facing (straylight) samples implied by the faulty-sample
/// fraction: the faulty budget split evenly across the fault classes.
inline int straylight_count(int n_total, double faulty_fraction, int n_classes) {
  return static_cast<int>(std::lround(n_total * faulty_fraction / n_classes));
}

/// Builds the per-run injection matrix.
///
/// Column layout: the first round(n_total * fraction) columns are faulty,
/// the rest nominal (all-zero). The straylight row is a prefix of
/// n_straylight ones. Every remaining faulty column receives exactly one
/// of the other enabled classes; the class labels are dealt in equal
/// shares and shuffled, so per-class counts match to within one.
inline InjectionMatrix build_injection_matrix(
    int n_total, double faulty_fraction, SeededRng& rng,
    std::optional<int> n_straylight_override = std::nullopt,
    std::array<bool, kFaultClassCount> enabled = {true, true, true, true, true, true}) {
  if (!(faulty_fraction >= 0.0 && faulty_fraction <= 1.0))
    throw std::invalid_argument("faulty_fraction must lie in [0, 1]");
  if (n_total < 0) throw std::invalid_argument("n_total must be >= 0");

  int n_enabled = 0;
  for (bool e : enabled) n_enabled += e ? 1 : 0;

  const int n_faulty = static_cast<int>(std::lround(n_total * faulty_fraction));
  int n_straylight = 0;
  if (enabled[static_cast<int>(FaultClass::kStraylight)]) {
    n_straylight = n_straylight_override
                       ? *n_straylight_override
                       : straylight_count(n_total, faulty_fraction, std::max(n_enabled, 1));
  }
  if (n_straylight < 0 || n_straylight > n_total)
    throw std::invalid_argument("n_straylight must lie in [0, n_total]");

  InjectionMatrix m(n_total);
  m.set_n_straylight(n_straylight);
  for (int i = 0; i < n_straylight; ++i) m.set(FaultClass::kStraylight, i, true);

  std::vector<FaultClass> pool;
  for (int c = 0; c < kFaultClassCount; ++c)
    if (enabled[c] && static_cast<FaultClass>(c) != FaultClass::kStraylight)
      pool.push_back(static_cast<FaultClass>(c));

  const int first = std::min(n_straylight, n_faulty);
  const int n_random = n_faulty - first;
  if (n_random > 0) {
    if (pool.empty())
      throw std::invalid_argument(
          "faulty_fraction > 0 requires at least one enabled non-straylight class");
    std::vector<FaultClass> deal(n_random);
    for (int i = 0; i < n_random; ++i) deal[i] = pool[i % pool.size()];
    for (int i = n_random - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i) + 1));
      std::swap(deal[i], deal[j]);
    }
    for (int i = 0; i < n_random; ++i) m.set(deal[i], first + i, true);
  }
  return m;
}

}  // namespace camfault::inject
