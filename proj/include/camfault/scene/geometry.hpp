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

#include <cmath>
#include <stdexcept>

namespace camfault::scene {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Vec3: cannot normalize zero vector");
    return {x / n, y / n, z / n};
  }
};

/// 3x3 rotation matrix, row-major. Used as a passive (coordinate)
/// transform: v_target = R * v_source.
struct Mat3 {
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  static Mat3 identity() { return {}; }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r.m[i][j] = 0;
        for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
      }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  double max_abs_diff(const Mat3& o) const {
    double d = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(m[i][j] - o.m[i][j]));
    return d;
  }

  double determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

using FrameRotation = Mat3;

/// Passive elementary rotations (coordinate transforms).
inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m[1][1] = c; r.m[1][2] = s;
  r.m[2][1] = -s; r.m[2][2] = c;
  return r;
}

inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m[0][0] = c; r.m[0][2] = -s;
  r.m[2][0] = s; r.m[2][2] = c;
  return r;
}

inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r.m[0][0] = c; r.m[0][1] = s;
  r.m[1][0] = -s; r.m[1][1] = c;
  return r;
}

/// Unit direction toward the Sun in the Local-Level frame from azimuth and
/// elevation. The Local-Level z-axis follows the effective gravity vector
/// (downward), so positive elevation gives a negative z component.
inline Vec3 sun_direction(double azimuth, double elevation) {
  const double ce = std::cos(elevation);
  return {ce * std::cos(azimuth), ce * std::sin(azimuth), -std::sin(elevation)};
}

/// Attitude of the spacecraft relative to the Sun-aligned datum frame,
/// intrinsic z-y-x (yaw, then pitch, then roll). Returned as the passive
/// rotation taking datum coordinates to body/camera coordinates; identity
/// attitude keeps the camera boresight on the Sun.
inline FrameRotation attitude_rotation(double roll, double pitch, double yaw) {
  return rot_x(roll) * rot_y(pitch) * rot_z(yaw);
}

/// Datum rotation Local-Level -> camera with the boresight (+z) on the Sun
/// and a level horizon (camera x-axis horizontal). Realizes the generation
/// procedure's initial Sun alignment. Falls back to the north axis when the
/// Sun is within ~1e-9 of zenith/nadir and the horizontal cross degenerates.
inline Mat3 sun_datum_rotation(const Vec3& sun_dir_local) {
  const Vec3 z = sun_dir_local.normalized();
  const Vec3 up{0, 0, -1};  // opposite the Local-Level gravity axis
  Vec3 x = z.cross(up);
  if (x.norm() < 1e-9) x = z.cross(Vec3{1, 0, 0});
  x = x.normalized();
  const Vec3 y = z.cross(x);
  Mat3 r;
  r.m[0][0] = x.x; r.m[0][1] = x.y; r.m[0][2] = x.z;
  r.m[1][0] = y.x; r.m[1][1] = y.y; r.m[1][2] = y.z;
  r.m[2][0] = z.x; r.m[2][1] = z.y; r.m[2][2] = z.z;
  return r;
}

}  // namespace camfault::scene
