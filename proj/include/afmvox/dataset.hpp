//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "afmvox/manifest.hpp"
#include "afmvox/molecule.hpp"
#include "afmvox/renderer.hpp"
#include "afmvox/voxelizer.hpp"

namespace afmvox {

inline constexpr std::string_view kPipelineVersion = "1.0.0";
inline constexpr double kTrainFraction = 0.8;

struct PipelineConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::uint64_t global_seed = 0;
  std::size_t target_res = 256;
  std::size_t gt_res = 32;
  std::size_t image_res = kImageRes;
  std::size_t n_views = kViewsPerSample;
  std::size_t views_per_entry = 5;
  ShadeMode shade = ShadeMode::kHeightGray;
  FillMode fill = FillMode::kFloodFill;
  unsigned workers = 1;

  /// Throws Error(kInvalidConfig) when a field is out of range.
  void validate() const;
};

// Files of one generated sample, relative to the dataset root.
struct ProteinSample {
  std::string protein_id;
  std::filesystem::path voxel_path;
  std::vector<std::filesystem::path> view_paths;
  std::filesystem::path rotations_path;
};

std::string voxel_file_name(std::size_t gt_res);
std::string view_file_name(std::size_t view_index);

/// Runs voxelize -> downsample -> sample views -> render/shade/encode and
/// writes <dataset_root>/<protein_id>/{voxel_NN.afmv, rotations.json,
/// views/view_NN.png}. The sample directory appears atomically: on failure
/// nothing is left behind.
ProteinSample build_sample(const Geometry& source, const std::string& protein_id, const PipelineConfig& config,
                           const std::filesystem::path& dataset_root, unsigned workers = 1);

/// Protein-level assignment, sorted by protein id.
using Assignment = std::vector<std::pair<std::string, Split>>;

/// Sorts the ids, shuffles them deterministically from `seed` and assigns the
/// first floor(train_frac * N) to train, the rest to val.
Assignment split_dataset(std::vector<std::string> protein_ids, std::uint64_t seed,
                         double train_frac = kTrainFraction);

/// Four entries per protein; each draws `n_views` distinct view indices from
/// the `rendered` views using a seed derived from (seed, protein, repetition).
std::vector<ManifestEntry> expand_repetitions(const Assignment& assignment, std::size_t n_views,
                                              std::uint64_t seed, std::size_t gt_res = 32,
                                              std::size_t rendered = kViewsPerSample);

/// .pdb/.ent/.obj files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> find_structures(const std::filesystem::path& dir);

/// Lists sample directories (those holding a rotations.json) under a dataset root.
std::vector<std::string> find_samples(const std::filesystem::path& dataset_root);

std::string dataset_config_json(const PipelineConfig& config);

struct GenerateSummary {
  std::size_t built = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // (input file, reason)
  std::vector<ManifestEntry> manifest;
  double elapsed_seconds = 0.0;
};

/// Builds every structure in config.input_dir, then writes manifest.jsonl and
/// dataset_config.json. Per-structure failures are collected, not thrown.
/// Progress lines go to `log` when non-null.
GenerateSummary generate_dataset(const PipelineConfig& config, std::ostream* log = nullptr);

}  // namespace afmvox
