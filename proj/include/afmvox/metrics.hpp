//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afmvox/manifest.hpp"
#include "afmvox/voxel_grid.hpp"

namespace afmvox {

inline constexpr double kDefaultIouThreshold = 0.4;
inline constexpr double kBceEpsilon = 1e-7;

struct IouCounts {
  std::uint64_t intersection = 0;
  std::uint64_t union_count = 0;

  // Two empty grids overlap perfectly.
  double iou() const {
    return union_count == 0 ? 1.0
                            : static_cast<double>(intersection) / static_cast<double>(union_count);
  }
};

/// Predictions are occupied where value >= threshold.
IouCounts iou_counts(const ScalarGrid& pred, const VoxelGrid& truth, double threshold = kDefaultIouThreshold);
IouCounts iou_counts(const VoxelGrid& pred, const VoxelGrid& truth);

double iou(const ScalarGrid& pred, const VoxelGrid& truth, double threshold = kDefaultIouThreshold);
double iou(const VoxelGrid& pred, const VoxelGrid& truth);

/// Mean binary cross-entropy with predictions clamped to [eps, 1 - eps].
double bce(const ScalarGrid& pred, const VoxelGrid& truth);

struct EntryEval {
  std::string protein_id;
  Split split = Split::kTrain;
  std::uint32_t repetition = 0;
  std::size_t n_views = 0;
  std::optional<IouCounts> counts;  // empty when the entry could not be scored
  std::string error;
};

struct SplitSummary {
  std::size_t n_views = 0;
  Split split = Split::kTrain;
  std::size_t count = 0;
  double mean_iou = 0.0;
};

struct EvalReport {
  double threshold = kDefaultIouThreshold;
  std::vector<EntryEval> entries;    // sorted by protein_id, repetition
  std::vector<SplitSummary> summary; // sorted by n_views, split
  std::size_t failures = 0;
};

/// Where the evaluation expects the prediction for an entry:
/// <predictions_dir>/<protein_id>/rep_<repetition>.afmv
std::filesystem::path prediction_path(const std::filesystem::path& predictions_dir, const ManifestEntry& entry);

/// Scores every manifest entry against its ground-truth VoxFile (resolved
/// under dataset_root). Missing or unreadable files are recorded per entry,
/// excluded from the means and counted in `failures`.
EvalReport batch_eval(std::span<const ManifestEntry> entries, const std::filesystem::path& dataset_root,
                      const std::filesystem::path& predictions_dir, double threshold = kDefaultIouThreshold,
                      unsigned workers = 1);

std::string report_to_json(const EvalReport& report);

/// Fixed-width table with one row per view count and Train/Validation/Test
/// IoU columns.
std::string format_table(const EvalReport& report);

}  // namespace afmvox
