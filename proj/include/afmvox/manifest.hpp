//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace afmvox {

inline constexpr std::uint32_t kRepetitions = 4;

// kTest is reserved for externally supplied image sets and is never assigned
// by the dataset builder.
enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

// One training example: a protein, one repetition, and the subset of its
// rendered views fed to the network. Paths are relative to the dataset root.
struct ManifestEntry {
  std::string protein_id;
  Split split = Split::kTrain;
  std::uint32_t repetition = 0;
  std::vector<std::uint32_t> view_indices;
  std::string voxel_path;
  std::vector<std::string> view_paths;
  std::string rotations_path;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// JSON Lines, one object per entry, keys in the order
/// protein_id, split, repetition, view_indices, voxel, views, rotations.
std::string write_manifest(std::span<const ManifestEntry> entries);

/// Parses JSON Lines written by write_manifest. Blank lines are skipped.
/// Schema violations throw Error(kManifestError) with the 1-based line.
std::vector<ManifestEntry> read_manifest(std::string_view text);

}  // namespace afmvox
