//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>

#include "afmvox/geometry.hpp"
#include "afmvox/molecule.hpp"
#include "afmvox/voxel_grid.hpp"

namespace afmvox {

enum class FillMode {
  // Exterior flood fill; tolerates non-watertight meshes.
  kFloodFill,
  // Even-odd crossings along z columns; only for watertight meshes.
  kRayParity,
};

struct VoxelizeOptions {
  std::size_t target_res = 256;
  FillMode fill = FillMode::kFloodFill;
  unsigned workers = 1;
};

inline constexpr std::size_t kMinTargetRes = 8;
inline constexpr std::size_t kMaxTargetRes = 1024;

/// Fits a res^3 cube around `box`: the longest extent spans exactly `res`
/// voxels and the other axes are zero padded, centered in whole voxels with
/// the odd voxel on the high side. Throws kDegenerateGeometry on zero extent.
GridTransform fit_transform(const Aabb& box, std::size_t res);

/// Separating-axis triangle/box overlap. Touching counts as overlap.
bool triangle_box_overlap(Vec3 box_center, Vec3 half_size, Vec3 a, Vec3 b, Vec3 c);

/// Conservative surface voxelization into a fixed grid: a voxel is set iff its
/// cube overlaps some triangle.
VoxelGrid voxelize_surface(const TriangleMesh& mesh, Dims dims, const GridTransform& transform,
                           unsigned workers = 1);

/// Marks every voxel not reachable from the grid boundary through empty
/// 6-connected voxels.
VoxelGrid solid_fill(const VoxelGrid& surface);

/// Solid voxelization of a mesh into a fixed grid.
///
/// kFloodFill: the conservative surface is filled by solid_fill. Each
/// 26-connected surface component that encloses at least one voxel center is
/// then trimmed to the voxels whose centers are enclosed, so closed surfaces
/// follow the voxel-center-in-solid rule. Components enclosing nothing (open
/// sheets) keep their conservative footprint.
VoxelGrid voxelize_mesh_in(const TriangleMesh& mesh, Dims dims, const GridTransform& transform,
                           FillMode fill = FillMode::kFloodFill, unsigned workers = 1);

/// Fits the mesh into a target_res^3 cube and voxelizes it.
VoxelGrid voxelize_mesh(const TriangleMesh& mesh, const VoxelizeOptions& options = {});

/// Voxel-center-in-sphere union of the atoms in a fixed grid.
VoxelGrid voxelize_atoms_in(const Molecule& molecule, Dims dims, const GridTransform& transform,
                            unsigned workers = 1);

/// Fits the molecule (atom spheres included) into a target_res^3 cube.
VoxelGrid voxelize_atoms(const Molecule& molecule, const VoxelizeOptions& options = {});

VoxelGrid voxelize(const Geometry& geometry, const VoxelizeOptions& options = {});

/// Max-pool downsampling: an output voxel is set iff any voxel of its
/// factor^3 block is set. The pitch grows by `factor`; the origin is kept.
VoxelGrid downsample(const VoxelGrid& grid, std::size_t factor = 8);

}  // namespace afmvox
