//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "afmvox/view_sampler.hpp"
#include "afmvox/voxel_grid.hpp"

namespace afmvox {

inline constexpr std::size_t kImageRes = 224;

// Topography image: world-unit height of the first surface above the far
// plane, row-major with row 0 at the top. Background pixels are 0.
struct HeightMap {
  std::size_t width = 0;
  std::size_t height = 0;
  double pixel_size = 1.0;  // world units per pixel edge
  std::vector<double> values;

  double at(std::size_t col, std::size_t row) const { return values[row * width + col]; }
  friend bool operator==(const HeightMap&, const HeightMap&) = default;
};

// 8-bit RGB, row-major top to bottom.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h * 3, 0) {}
  const std::uint8_t* pixel(std::size_t col, std::size_t row) const { return &pixels[(row * width + col) * 3]; }
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

enum class ShadeMode { kHeightGray, kLambert };

std::string_view to_string(ShadeMode mode);
std::optional<ShadeMode> parse_shade_mode(std::string_view text);

/// Orthographic camera around a cubic grid, expressed in grid coordinates
/// (one unit per voxel edge).
///
/// Rendering with rotation R shows the object rotated by R to a fixed camera
/// looking down -z, so rays travel along R^-1 * (0, 0, -1) in the grid frame.
/// The image square and the depth range both span the cube diagonal, so no
/// rotation can clip the object. Samples sit at multiples of half a voxel
/// from the near plane.
class OrthoCamera {
 public:
  OrthoCamera(std::size_t grid_edge, const Rotation& rotation, std::size_t resolution);

  Vec3 ray_origin(std::size_t col, std::size_t row) const;
  Vec3 direction() const { return dir_; }
  Vec3 sample(std::size_t col, std::size_t row, std::size_t k) const {
    return ray_origin(col, row) + dir_ * (static_cast<double>(k) * kStep);
  }
  std::size_t sample_count() const { return samples_; }
  double depth() const { return depth_; }
  double image_span() const { return span_; }
  std::size_t resolution() const { return resolution_; }

  static constexpr double kStep = 0.5;

 private:
  std::size_t resolution_;
  double depth_;
  double span_;
  std::size_t samples_;
  Vec3 center_;
  Vec3 right_;
  Vec3 up_;
  Vec3 back_;
  Vec3 dir_;
};

/// First-hit topography of a binary cubic grid. Throws kShapeMismatch for
/// non-cubic grids.
HeightMap render_heightmap(const VoxelGrid& grid, const Rotation& rotation,
                           std::size_t resolution = kImageRes, unsigned workers = 1);

/// height-gray: hit heights min-max normalized to [30, 255] (all 255 when
/// every hit has the same height), background black.
/// lambert: diffuse gray from central-difference normals of the height field,
/// light from (1, 1, 1)/sqrt(3), background black.
RgbImage shade(const HeightMap& hm, ShadeMode mode = ShadeMode::kHeightGray);

}  // namespace afmvox
