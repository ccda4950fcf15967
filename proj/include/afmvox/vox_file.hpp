//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "afmvox/voxel_grid.hpp"

namespace afmvox {

// Binary occupancy file, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "AFMV"
//   4       2     version (1)
//   6       6     nx, ny, nz as u16
//   12      P     payload: one bit per voxel, x-fastest, LSB-first within a
//                 byte, zero-padded to a byte boundary; P = ceil(nx*ny*nz / 8)
//   12+P    4     CRC-32 (zlib polynomial) of the payload
inline constexpr std::uint16_t kVoxVersion = 1;
inline constexpr std::size_t kVoxHeaderSize = 12;

std::vector<std::uint8_t> encode_vox(const VoxelGrid& grid);

struct VoxInspection {
  VoxelGrid grid;
  std::uint32_t stored_crc = 0;
  std::uint32_t computed_crc = 0;
  bool crc_ok() const { return stored_crc == computed_crc; }
};

/// Parses the structure of a VoxFile without rejecting a CRC mismatch.
/// Structural violations throw Error(kFormatError) carrying the byte offset.
VoxInspection inspect_vox(std::span<const std::uint8_t> bytes);

/// Like inspect_vox, but a CRC mismatch is also a kFormatError.
VoxelGrid decode_vox(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

VoxelGrid read_vox_file(const std::filesystem::path& path);
void write_vox_file(const std::filesystem::path& path, const VoxelGrid& grid);

}  // namespace afmvox
