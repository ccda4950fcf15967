//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/voxel_grid.hpp"

#include <algorithm>
#include <string>

namespace afmvox {

std::size_t count_occupied(const VoxelGrid& grid) {
  const auto v = grid.values();
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; }));
}

bool is_binary(const VoxelGrid& grid) {
  const auto v = grid.values();
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x <= 1; });
}

IndexBox occupied_bounds(const VoxelGrid& grid) {
  IndexBox box;
  const Dims& d = grid.dims();
  for (std::size_t k = 0; k < d.nz; ++k) {
    for (std::size_t j = 0; j < d.ny; ++j) {
      for (std::size_t i = 0; i < d.nx; ++i) {
        if (grid(i, j, k) == 0) continue;
        const std::array<std::size_t, 3> p{i, j, k};
        if (box.empty) {
          box.lo = box.hi = p;
          box.empty = false;
        } else {
          for (int a = 0; a < 3; ++a) {
            box.lo[a] = std::min(box.lo[a], p[a]);
            box.hi[a] = std::max(box.hi[a], p[a]);
          }
        }
      }
    }
  }
  return box;
}

void require_same_dims(const Dims& a, const Dims& b, const char* what) {
  if (a == b) return;
  auto str = [](const Dims& d) {
    return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
  };
  throw Error(ErrorKind::kShapeMismatch, std::string(what) + ": " + str(a) + " vs " + str(b));
}

}  // namespace afmvox
