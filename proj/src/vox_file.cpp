//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/vox_file.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>
#include <string>

#include "afmvox/error.hpp"

namespace afmvox {
namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'F', 'M', 'V'};

std::uint32_t payload_crc(std::span<const std::uint8_t> payload) {
  return static_cast<std::uint32_t>(crc32(0L, payload.data(), static_cast<uInt>(payload.size())));
}

std::uint32_t read_le(std::span<const std::uint8_t> bytes, std::size_t at, int width) {
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

void put_le(std::vector<std::uint8_t>& out, std::uint32_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
  throw Error(ErrorKind::kFormatError, what, std::nullopt, offset);
}

}  // namespace

std::vector<std::uint8_t> encode_vox(const VoxelGrid& grid) {
  const Dims& d = grid.dims();
  if (d.nx == 0 || d.ny == 0 || d.nz == 0 || d.nx > 0xffff || d.ny > 0xffff || d.nz > 0xffff) {
    throw Error(ErrorKind::kShapeMismatch, "VoxFile dims must be in [1, 65535]");
  }
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le(out, kVoxVersion, 2);
  put_le(out, static_cast<std::uint32_t>(d.nx), 2);
  put_le(out, static_cast<std::uint32_t>(d.ny), 2);
  put_le(out, static_cast<std::uint32_t>(d.nz), 2);

  const auto values = grid.values();
  std::vector<std::uint8_t> payload((values.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 1) throw Error(ErrorKind::kShapeMismatch, "VoxFile stores binary grids only");
    if (values[i]) payload[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  out.insert(out.end(), payload.begin(), payload.end());
  put_le(out, payload_crc(payload), 4);
  return out;
}

VoxInspection inspect_vox(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kVoxHeaderSize) fail("truncated header", bytes.size());
  for (std::size_t i = 0; i < 4; ++i)
    if (bytes[i] != kMagic[i]) fail("bad magic, expected AFMV", i);
  if (const auto version = read_le(bytes, 4, 2); version != kVoxVersion) {
    fail("unsupported version " + std::to_string(version), 4);
  }
  const Dims d{read_le(bytes, 6, 2), read_le(bytes, 8, 2), read_le(bytes, 10, 2)};
  for (int a = 0; a < 3; ++a)
    if (d[a] == 0) fail("zero dimension", 6 + 2 * static_cast<std::size_t>(a));

  const std::size_t voxels = d.count();
  const std::size_t payload_size = (voxels + 7) / 8;
  const std::size_t expected = kVoxHeaderSize + payload_size + 4;
  if (bytes.size() < expected) fail("truncated payload or trailer", bytes.size());
  if (bytes.size() > expected) fail("trailing bytes after CRC", expected);

  const auto payload = bytes.subspan(kVoxHeaderSize, payload_size);
  if (const std::size_t used = voxels % 8; used != 0 && (payload.back() >> used) != 0) {
    fail("non-zero padding bits", kVoxHeaderSize + payload_size - 1);
  }

  VoxInspection result;
  result.grid = VoxelGrid(d);
  auto values = result.grid.values();
  for (std::size_t i = 0; i < voxels; ++i) values[i] = (payload[i / 8] >> (i % 8)) & 1u;
  result.stored_crc = read_le(bytes, kVoxHeaderSize + payload_size, 4);
  result.computed_crc = payload_crc(payload);
  return result;
}

VoxelGrid decode_vox(std::span<const std::uint8_t> bytes) {
  VoxInspection info = inspect_vox(bytes);
  if (!info.crc_ok()) fail("CRC mismatch", bytes.size() - 4);
  return std::move(info.grid);
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIoError, "short write to " + path.string());
}

VoxelGrid read_vox_file(const std::filesystem::path& path) {
  return decode_vox(read_binary_file(path));
}

void write_vox_file(const std::filesystem::path& path, const VoxelGrid& grid) {
  write_binary_file(path, encode_vox(grid));
}

}  // namespace afmvox
