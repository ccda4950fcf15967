//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <tuple>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include <json.hpp>

#include "afmvox/error.hpp"
#include "afmvox/parallel.hpp"
#include "afmvox/png.hpp"
#include "afmvox/view_sampler.hpp"
#include "afmvox/vox_file.hpp"

namespace afmvox {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kRotationsFile = "rotations.json";
constexpr std::string_view kViewsDir = "views";

void write_text(const fs::path& path, std::string_view text) {
  write_binary_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::string rotations_json(const std::string& protein_id, std::uint64_t global_seed,
                           const std::vector<ViewSpec>& views) {
  nlohmann::ordered_json j;
  j["protein_id"] = protein_id;
  j["global_seed"] = global_seed;
  auto& list = j["views"] = nlohmann::ordered_json::array();
  for (const auto& v : views) {
    nlohmann::ordered_json row;
    row["view_index"] = v.view_index;
    row["seed"] = v.seed;
    row["quaternion_wxyz"] = {v.rotation.w, v.rotation.x, v.rotation.y, v.rotation.z};
    row["image"] = (fs::path(kViewsDir) / view_file_name(v.view_index)).generic_string();
    list.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kInvalidConfig, what); };
  if (target_res < kMinTargetRes || target_res > kMaxTargetRes) fail("target-res must be in [8, 1024]");
  if (gt_res == 0 || target_res % gt_res != 0) fail("gt-res must divide target-res");
  if (image_res == 0 || image_res > 4096) fail("image-res must be in [1, 4096]");
  if (n_views == 0 || n_views > kViewsPerSample) fail("views must be in [1, 25]");
  if (views_per_entry == 0 || views_per_entry > n_views) fail("views-per-entry must be in [1, views]");
  if (workers == 0) fail("workers must be at least 1");
}

std::string voxel_file_name(std::size_t gt_res) { return "voxel_" + std::to_string(gt_res) + ".afmv"; }

std::string view_file_name(std::size_t view_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "view_%02zu.png", view_index);
  return buf;
}

ProteinSample build_sample(const Geometry& source, const std::string& protein_id, const PipelineConfig& config,
                           const fs::path& dataset_root, unsigned workers) {
  config.validate();
  if (protein_id.empty() || protein_id.front() == '.' || protein_id.find('/') != std::string::npos) {
    throw Error(ErrorKind::kInvalidConfig, "invalid protein id '" + protein_id + "'");
  }

  // Everything that can fail on bad geometry runs before touching the disk.
  VoxelizeOptions vopts;
  vopts.target_res = config.target_res;
  vopts.fill = config.fill;
  vopts.workers = workers;
  const VoxelGrid fine = voxelize(source, vopts);
  const VoxelGrid coarse = downsample(fine, config.target_res / config.gt_res);
  const auto views = generate_viewset(protein_id, config.global_seed, config.n_views);

  ProteinSample sample;
  sample.protein_id = protein_id;
  sample.voxel_path = fs::path(protein_id) / voxel_file_name(config.gt_res);
  sample.rotations_path = fs::path(protein_id) / kRotationsFile;
  for (const auto& v : views) sample.view_paths.push_back(fs::path(protein_id) / kViewsDir / view_file_name(v.view_index));

  const fs::path staging = dataset_root / (".tmp-" + protein_id);
  const fs::path final_dir = dataset_root / protein_id;
  try {
    fs::remove_all(staging);
    fs::create_directories(staging / kViewsDir);
    write_vox_file(staging / voxel_file_name(config.gt_res), coarse);
    write_text(staging / kRotationsFile, rotations_json(protein_id, config.global_seed, views));
    parallel_for(views.size(), workers, [&](std::size_t i) {
      const HeightMap hm = render_heightmap(fine, views[i].rotation, config.image_res);
      const auto png = encode_png(shade(hm, config.shade));
      write_binary_file(staging / kViewsDir / view_file_name(views[i].view_index), png);
    });
    fs::remove_all(final_dir);
    fs::rename(staging, final_dir);
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
  return sample;
}

Assignment split_dataset(std::vector<std::string> protein_ids, std::uint64_t seed, double train_frac) {
  std::ranges::sort(protein_ids);
  if (std::ranges::adjacent_find(protein_ids) != protein_ids.end()) {
    throw Error(ErrorKind::kInvalidConfig, "duplicate protein id");
  }
  if (protein_ids.size() < 2) {
    throw Error(ErrorKind::kInsufficientData, "need at least 2 proteins to split");
  }
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "train fraction must be in (0, 1)");
  }
  std::vector<std::string> order = protein_ids;
  SplitMix64 rng(derive_seed(seed, "split", 0));
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  // The epsilon keeps 0.8 * 10 at 8 despite binary rounding.
  const auto n_train = static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(order.size()) + 1e-9));
  std::map<std::string, Split> by_id;
  for (std::size_t i = 0; i < order.size(); ++i) by_id[order[i]] = i < n_train ? Split::kTrain : Split::kVal;
  return {by_id.begin(), by_id.end()};
}

std::vector<ManifestEntry> expand_repetitions(const Assignment& assignment, std::size_t n_views,
                                              std::uint64_t seed, std::size_t gt_res, std::size_t rendered) {
  if (rendered == 0 || rendered > kViewsPerSample) {
    throw Error(ErrorKind::kInvalidConfig, "rendered views must be in [1, 25]");
  }
  if (n_views == 0 || n_views > rendered) {
    throw Error(ErrorKind::kInvalidConfig, "views per entry must be in [1, rendered views]");
  }
  std::vector<ManifestEntry> entries;
  entries.reserve(assignment.size() * kRepetitions);
  for (const auto& [id, split] : assignment) {
    for (std::uint32_t rep = 0; rep < kRepetitions; ++rep) {
      std::array<std::uint32_t, kViewsPerSample> pool{};
      std::iota(pool.begin(), pool.end(), 0u);
      SplitMix64 rng(derive_seed(seed, id + "/repetition", rep));
      for (std::size_t i = 0; i < n_views; ++i) {
        std::swap(pool[i], pool[i + rng.below(rendered - i)]);
      }
      ManifestEntry e;
      e.protein_id = id;
      e.split = split;
      e.repetition = rep;
      e.view_indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_views));
      e.voxel_path = (fs::path(id) / voxel_file_name(gt_res)).generic_string();
      for (std::uint32_t v : e.view_indices) {
        e.view_paths.push_back((fs::path(id) / kViewsDir / view_file_name(v)).generic_string());
      }
      e.rotations_path = (fs::path(id) / kRotationsFile).generic_string();
      entries.push_back(std::move(e));
    }
  }
  std::ranges::sort(entries, [](const ManifestEntry& a, const ManifestEntry& b) {
    return std::tie(a.protein_id, a.repetition) < std::tie(b.protein_id, b.repetition);
  });
  return entries;
}

std::vector<fs::path> find_structures(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kIoError, "not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pdb" || ext == ".ent" || ext == ".obj") out.push_back(entry.path());
  }
  std::ranges::sort(out);
  return out;
}

std::vector<std::string> find_samples(const fs::path& dataset_root) {
  if (!fs::is_directory(dataset_root)) {
    throw Error(ErrorKind::kIoError, "not a directory: " + dataset_root.string());
  }
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dataset_root)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_directory() && !name.starts_with(".") && fs::exists(entry.path() / kRotationsFile)) {
      ids.push_back(name);
    }
  }
  std::ranges::sort(ids);
  return ids;
}

std::string dataset_config_json(const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["pipeline_version"] = kPipelineVersion;
  j["global_seed"] = config.global_seed;
  j["target_res"] = config.target_res;
  j["gt_res"] = config.gt_res;
  j["image_res"] = config.image_res;
  j["n_views"] = config.n_views;
  j["views_per_entry"] = config.views_per_entry;
  j["repetitions"] = kRepetitions;
  j["train_fraction"] = kTrainFraction;
  j["shade"] = to_string(config.shade);
  j["fill"] = config.fill == FillMode::kRayParity ? "ray-parity" : "flood-fill";
  j["voxel_file"] = voxel_file_name(config.gt_res);
  j["manifest"] = "manifest.jsonl";
  return j.dump(2) + "\n";
}

GenerateSummary generate_dataset(const PipelineConfig& config, std::ostream* log) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto inputs = find_structures(config.input_dir);
  if (inputs.empty()) throw Error(ErrorKind::kInsufficientData, "no input structures in " + config.input_dir.string());
  fs::create_directories(config.output_dir);

  std::mutex log_mutex;
  auto say = [&](const std::string& line) {
    if (!log) return;
    std::lock_guard lock(log_mutex);
    *log << line << '\n';
  };

  // Duplicate stems would collide on disk; the first file in sorted order wins.
  std::vector<std::string> ids(inputs.size());
  std::vector<std::string> errors(inputs.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    ids[i] = inputs[i].stem().string();
    if (!seen.insert(ids[i]).second) errors[i] = "duplicate protein id '" + ids[i] + "'";
  }

  const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(config.workers, inputs.size()));
  const unsigned inner = std::max(1u, config.workers / std::max(1u, outer));
  std::atomic<std::size_t> done{0};
  parallel_for(inputs.size(), outer, [&](std::size_t i) {
    if (errors[i].empty()) {
      try {
        std::vector<std::string> warnings;
        const Geometry geometry = load_structure(inputs[i], &warnings);
        for (const auto& w : warnings) say("warning: " + inputs[i].filename().string() + ": " + w);
        build_sample(geometry, ids[i], config, config.output_dir, inner);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
    const std::size_t n = ++done;
    say("[" + std::to_string(n) + "/" + std::to_string(inputs.size()) + "] " + inputs[i].filename().string() +
        (errors[i].empty() ? ": ok" : ": FAILED: " + errors[i]));
  });

  GenerateSummary summary;
  std::vector<std::string> built;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i].empty()) {
      built.push_back(ids[i]);
    } else {
      summary.failures.emplace_back(inputs[i].filename().string(), errors[i]);
    }
  }
  summary.built = built.size();

  write_text(config.output_dir / "dataset_config.json", dataset_config_json(config));
  try {
    const Assignment assignment = split_dataset(built, config.global_seed);
    summary.manifest = expand_repetitions(assignment, config.views_per_entry, config.global_seed, config.gt_res,
                                          config.n_views);
    write_text(config.output_dir / "manifest.jsonl", write_manifest(summary.manifest));
  } catch (const Error& ex) {
    summary.failures.emplace_back("manifest.jsonl", ex.what());
  }

  summary.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace afmvox
