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

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "camfault/core/image.hpp"

namespace camfault {

/// Raised on unreadable/unwritable files and malformed image data.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] inline void png_error_fn(png_structp png, png_const_charp msg) {
  // Forward libpng's longjmp path into the exception idiom used elsewhere.
  throw IoError(std::string("png: ") + msg);
  (void)png;
}

inline void png_warn_fn(png_structp, png_const_charp) {}

}  // namespace detail

/// Serializes an RGBI image as an 8-bit RGBA PNG; the alpha plane carries
/// the intensity channel. Output bytes are deterministic for fixed input.
inline void write_rgbi_png(const ImageRGBI& img, const std::filesystem::path& path) {
  detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot open for writing: " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            detail::png_error_fn, detail::png_warn_fn);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGBA,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.height());
    auto* base = const_cast<std::uint8_t*>(img.data().data());
    for (int y = 0; y < img.height(); ++y)
      rows[y] = base + static_cast<std::size_t>(y) * img.width() * 4;
    png_write_image(png, rows.data());
    png_write_end(png, info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

/// Reads an 8-bit PNG into the RGBI layout. Gray and palette inputs are
/// expanded to RGB; when the source has an alpha plane it is taken as the
/// intensity channel, otherwise intensity is recomputed as round(mean(RGB)).
inline ImageRGBI read_rgbi_png(const std::filesystem::path& path) {
  detail::FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw IoError("cannot open for reading: " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           detail::png_error_fn, detail::png_warn_fn);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  ImageRGBI img;
  try {
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const bool had_alpha = (color_type & PNG_COLOR_MASK_ALPHA) != 0 ||
                           png_get_valid(png, info, PNG_INFO_tRNS);

    png_set_expand(png);
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
      png_set_gray_to_rgb(png);
    png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    img = ImageRGBI(w, h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
      rows[y] = img.data().data() + static_cast<std::size_t>(y) * w * 4;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);

    if (!had_alpha)
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.refresh_intensity(x, y);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

/// Masks serialize as 8-bit grayscale PNG with values {0, 255}.
inline void write_mask_png(const FaultMask& mask, const std::filesystem::path& path) {
  detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot open for writing: " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            detail::png_error_fn, detail::png_warn_fn);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, mask.width(), mask.height(), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<std::uint8_t> row(mask.width());
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) row[x] = mask.get(x, y) ? 255 : 0;
      png_write_row(png, row.data());
    }
    png_write_end(png, info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

inline FaultMask read_mask_png(const std::filesystem::path& path) {
  ImageRGBI img = read_rgbi_png(path);
  FaultMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) mask.set(x, y, img.at(x, y, kR) != 0);
  return mask;
}

/// Plain 8-bit grayscale PNG (texture dumps).
inline void write_gray_png(const std::vector<std::uint8_t>& gray, int width, int height,
                           const std::filesystem::path& path) {
  if (width <= 0 || height <= 0 ||
      gray.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("write_gray_png: buffer does not match dimensions");
  detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot open for writing: " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            detail::png_error_fn, detail::png_warn_fn);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
      png_write_row(png, const_cast<std::uint8_t*>(gray.data()) +
                             static_cast<std::size_t>(y) * width);
    png_write_end(png, info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

/// Plain 8-bit RGB PNG (color texture dumps, no alpha semantics).
inline void write_rgb_png(const std::vector<std::uint8_t>& rgb, int width, int height,
                          const std::filesystem::path& path) {
  if (width <= 0 || height <= 0 ||
      rgb.size() != static_cast<std::size_t>(width) * height * 3)
    throw std::invalid_argument("write_rgb_png: buffer does not match dimensions");
  detail::FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot open for writing: " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            detail::png_error_fn, detail::png_warn_fn);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
      png_write_row(png, const_cast<std::uint8_t*>(rgb.data()) +
                             static_cast<std::size_t>(y) * width * 3);
    png_write_end(png, info);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

}  // namespace camfault
