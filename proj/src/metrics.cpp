//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "afmvox/error.hpp"
#include "afmvox/parallel.hpp"
#include "afmvox/vox_file.hpp"

namespace afmvox {

IouCounts iou_counts(const ScalarGrid& pred, const VoxelGrid& truth, double threshold) {
  require_same_dims(pred.dims(), truth.dims(), "iou");
  const auto p = pred.values();
  const auto t = truth.values();
  IouCounts c;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool a = p[i] >= threshold;
    const bool b = t[i] != 0;
    c.intersection += (a && b);
    c.union_count += (a || b);
  }
  return c;
}

IouCounts iou_counts(const VoxelGrid& pred, const VoxelGrid& truth) {
  require_same_dims(pred.dims(), truth.dims(), "iou");
  const auto p = pred.values();
  const auto t = truth.values();
  IouCounts c;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool a = p[i] != 0;
    const bool b = t[i] != 0;
    c.intersection += (a && b);
    c.union_count += (a || b);
  }
  return c;
}

double iou(const ScalarGrid& pred, const VoxelGrid& truth, double threshold) {
  return iou_counts(pred, truth, threshold).iou();
}

double iou(const VoxelGrid& pred, const VoxelGrid& truth) { return iou_counts(pred, truth).iou(); }

double bce(const ScalarGrid& pred, const VoxelGrid& truth) {
  require_same_dims(pred.dims(), truth.dims(), "bce");
  const auto p = pred.values();
  const auto t = truth.values();
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(static_cast<double>(p[i]), kBceEpsilon, 1.0 - kBceEpsilon);
    sum -= t[i] ? std::log(q) : std::log(1.0 - q);
  }
  return sum / static_cast<double>(p.size());
}

std::filesystem::path prediction_path(const std::filesystem::path& predictions_dir, const ManifestEntry& entry) {
  return predictions_dir / entry.protein_id / ("rep_" + std::to_string(entry.repetition) + ".afmv");
}

EvalReport batch_eval(std::span<const ManifestEntry> entries, const std::filesystem::path& dataset_root,
                      const std::filesystem::path& predictions_dir, double threshold, unsigned workers) {
  EvalReport report;
  report.threshold = threshold;
  report.entries.resize(entries.size());
  parallel_for(entries.size(), workers, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    EntryEval& out = report.entries[i];
    out.protein_id = e.protein_id;
    out.split = e.split;
    out.repetition = e.repetition;
    out.n_views = e.view_indices.size();
    try {
      const VoxelGrid truth = read_vox_file(dataset_root / e.voxel_path);
      const VoxelGrid pred = read_vox_file(prediction_path(predictions_dir, e));
      out.counts = iou_counts(pred, truth);
    } catch (const Error& ex) {
      out.error = ex.what();
    }
  });
  std::ranges::sort(report.entries, [](const EntryEval& a, const EntryEval& b) {
    return std::tie(a.protein_id, a.repetition) < std::tie(b.protein_id, b.repetition);
  });

  std::map<std::pair<std::size_t, Split>, std::pair<std::size_t, double>> groups;
  for (const auto& e : report.entries) {
    if (!e.counts) {
      ++report.failures;
      continue;
    }
    auto& [count, sum] = groups[{e.n_views, e.split}];
    ++count;
    sum += e.counts->iou();
  }
  for (const auto& [key, acc] : groups) {
    report.summary.push_back({key.first, key.second, acc.first, acc.second / static_cast<double>(acc.first)});
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["threshold"] = report.threshold;
  j["failures"] = report.failures;
  auto& summary = j["summary"] = nlohmann::ordered_json::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"n_views", s.n_views}, {"split", to_string(s.split)}, {"count", s.count},
                       {"mean_iou", s.mean_iou}});
  }
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json row;
    row["protein_id"] = e.protein_id;
    row["split"] = to_string(e.split);
    row["repetition"] = e.repetition;
    row["n_views"] = e.n_views;
    if (e.counts) {
      row["iou"] = e.counts->iou();
      row["intersection"] = e.counts->intersection;
      row["union"] = e.counts->union_count;
    } else {
      row["iou"] = nullptr;
      row["error"] = e.error;
    }
    entries.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string format_table(const EvalReport& report) {
  std::map<std::size_t, std::map<Split, double>> rows;
  for (const auto& s : report.summary) rows[s.n_views][s.split] = s.mean_iou;

  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %-10s %-15s %-9s\n", "#views", "Train IoU", "Validation IoU", "Test IoU");
  out += line;
  auto cell = [](const std::map<Split, double>& row, Split split) {
    const auto it = row.find(split);
    if (it == row.end()) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", it->second);
    return std::string(buf);
  };
  for (const auto& [views, row] : rows) {
    std::snprintf(line, sizeof(line), "%-8zu %-10s %-15s %-9s\n", views, cell(row, Split::kTrain).c_str(),
                  cell(row, Split::kVal).c_str(), cell(row, Split::kTest).c_str());
    out += line;
  }
  return out;
}

}  // namespace afmvox
