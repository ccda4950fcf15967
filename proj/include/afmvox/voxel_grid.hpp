//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "afmvox/error.hpp"
#include "afmvox/geometry.hpp"

namespace afmvox {

// Maps grid indices to world space: the center of voxel (i, j, k) sits at
// origin + pitch * (i + 1/2, j + 1/2, k + 1/2).
struct GridTransform {
  Vec3 origin;
  double pitch = 1.0;

  Vec3 voxel_center(std::size_t i, std::size_t j, std::size_t k) const {
    return origin + Vec3{(static_cast<double>(i) + 0.5) * pitch, (static_cast<double>(j) + 0.5) * pitch,
                         (static_cast<double>(k) + 0.5) * pitch};
  }
  // Continuous grid coordinate: voxel (i, j, k) spans [i, i+1) x [j, j+1) x [k, k+1).
  Vec3 to_grid(Vec3 world) const { return (world - origin) * (1.0 / pitch); }

  friend bool operator==(const GridTransform&, const GridTransform&) = default;
};

struct Dims {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nz = 0;

  std::size_t count() const { return nx * ny * nz; }
  std::size_t operator[](int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  bool is_cube() const { return nx == ny && ny == nz; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

// Dense x-fastest volume.
template <typename T>
class Grid3 {
 public:
  Grid3() = default;
  Grid3(Dims dims, GridTransform transform = {}, T fill = T{})
      : dims_(dims), transform_(transform), values_(dims.count(), fill) {}

  const Dims& dims() const { return dims_; }
  const GridTransform& transform() const { return transform_; }
  void set_transform(const GridTransform& t) { transform_ = t; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return i + dims_.nx * (j + dims_.ny * k);
  }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return values_[index(i, j, k)]; }
  T operator()(std::size_t i, std::size_t j, std::size_t k) const { return values_[index(i, j, k)]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  Dims dims_;
  GridTransform transform_;
  std::vector<T> values_;
};

// Binary occupancy, values in {0, 1}.
using VoxelGrid = Grid3<std::uint8_t>;
// Real-valued volumes such as predicted occupancy probabilities.
using ScalarGrid = Grid3<float>;

std::size_t count_occupied(const VoxelGrid& grid);
bool is_binary(const VoxelGrid& grid);

// Inclusive index bounds of occupied voxels; nullopt-like empty flag when the
// grid has no occupied voxel.
struct IndexBox {
  std::array<std::size_t, 3> lo{};
  std::array<std::size_t, 3> hi{};
  bool empty = true;
};
IndexBox occupied_bounds(const VoxelGrid& grid);

void require_same_dims(const Dims& a, const Dims& b, const char* what);

}  // namespace afmvox
