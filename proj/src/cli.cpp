//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/cli.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "afmvox/dataset.hpp"
#include "afmvox/error.hpp"
#include "afmvox/metrics.hpp"
#include "afmvox/parallel.hpp"
#include "afmvox/png.hpp"
#include "afmvox/renderer.hpp"
#include "afmvox/view_sampler.hpp"
#include "afmvox/vox_file.hpp"
#include "afmvox/voxelizer.hpp"

namespace afmvox {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t target_res = 256;
  std::size_t gt_res = 32;
  std::size_t image_res = kImageRes;
  std::size_t views = kViewsPerSample;
  std::optional<std::size_t> views_per_entry;
  std::string shade = "height-gray";
  std::string fill = "flood-fill";
  double threshold = kDefaultIouThreshold;
  unsigned workers = default_workers();
  std::vector<double> quat;
  std::uint32_t view = 0;
  std::string predictions;
};

void write_text(const fs::path& path, const std::string& text) {
  write_binary_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

ShadeMode shade_from(const Options& o) {
  const auto mode = parse_shade_mode(o.shade);
  if (!mode) throw Error(ErrorKind::kInvalidConfig, "unknown shade mode '" + o.shade + "'");
  return *mode;
}

FillMode fill_from(const Options& o) {
  if (o.fill == "flood-fill") return FillMode::kFloodFill;
  if (o.fill == "ray-parity") return FillMode::kRayParity;
  throw Error(ErrorKind::kInvalidConfig, "unknown fill mode '" + o.fill + "'");
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  config.input_dir = o.input;
  config.output_dir = o.out;
  config.global_seed = o.seed.value_or(0);
  config.target_res = o.target_res;
  config.gt_res = o.gt_res;
  config.image_res = o.image_res;
  config.n_views = o.views;
  config.views_per_entry = o.views_per_entry.value_or(std::min<std::size_t>(5, o.views));
  config.shade = shade_from(o);
  config.fill = fill_from(o);
  config.workers = o.workers;

  const GenerateSummary s = generate_dataset(config, &err);
  for (const auto& [file, reason] : s.failures) err << "failed: " << file << ": " << reason << '\n';
  char line[160];
  std::snprintf(line, sizeof(line), "built %zu, failed %zu, manifest entries %zu, elapsed %.1f s\n", s.built,
                s.failures.size(), s.manifest.size(), s.elapsed_seconds);
  out << line;
  return s.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  Rotation rotation = Rotation::identity();
  if (!o.quat.empty()) {
    if (o.quat.size() != 4) throw Error(ErrorKind::kInvalidConfig, "--quat takes w,x,y,z");
    if (o.seed) throw Error(ErrorKind::kInvalidConfig, "--quat and --seed are exclusive");
    rotation = Rotation::from_quaternion(o.quat[0], o.quat[1], o.quat[2], o.quat[3]);
  }

  std::vector<std::string> warnings;
  const fs::path input = o.input;
  const Geometry geometry = load_structure(input, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (o.seed) {
    // Same rotation as view `--view` of this structure in a generated dataset.
    rotation = sample_rotation(derive_seed(*o.seed, input.stem().string(), o.view));
  }
  if (o.image_res == 0) throw Error(ErrorKind::kInvalidConfig, "image-res must be positive");

  VoxelizeOptions vopts;
  vopts.target_res = o.target_res;
  vopts.fill = fill_from(o);
  vopts.workers = o.workers;
  const VoxelGrid grid = voxelize(geometry, vopts);
  const HeightMap hm = render_heightmap(grid, rotation, o.image_res, o.workers);
  write_binary_file(o.out, encode_png(shade(hm, shade_from(o))));
  char line[160];
  std::snprintf(line, sizeof(line), "rendered %s with quaternion (%.6f, %.6f, %.6f, %.6f)\n", o.out.c_str(),
                rotation.w, rotation.x, rotation.y, rotation.z);
  err << line;
  (void)out;
  return kExitOk;
}

int cmd_split(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path root = o.input;
  std::uint64_t seed = o.seed.value_or(0);
  std::size_t gt_res = o.gt_res;
  std::size_t rendered = o.views;
  std::size_t per_entry = o.views_per_entry.value_or(5);
  const fs::path config_path = root / "dataset_config.json";
  if (fs::exists(config_path)) {
    try {
      const auto j = nlohmann::json::parse(read_text_file(config_path));
      if (!o.seed) seed = j.at("global_seed").get<std::uint64_t>();
      gt_res = j.at("gt_res").get<std::size_t>();
      rendered = j.at("n_views").get<std::size_t>();
      if (!o.views_per_entry) per_entry = j.at("views_per_entry").get<std::size_t>();
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::kFormatError, config_path.string() + ": " + ex.what());
    }
  }
  const auto ids = find_samples(root);
  const auto entries = expand_repetitions(split_dataset(ids, seed), per_entry, seed, gt_res, rendered);
  const fs::path target = o.out.empty() ? root / "manifest.jsonl" : fs::path(o.out);
  write_text(target, write_manifest(entries));
  err << "wrote " << entries.size() << " entries for " << ids.size() << " proteins to " << target.string() << '\n';
  (void)out;
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const fs::path manifest_path = o.input;
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "threshold must be in [0, 1]");
  }
  const auto entries = read_manifest(read_text_file(manifest_path));
  const fs::path root = manifest_path.parent_path().empty() ? fs::path(".") : manifest_path.parent_path();
  const EvalReport report = batch_eval(entries, root, o.predictions, o.threshold, o.workers);
  const fs::path target = o.out.empty() ? root / "eval_report.json" : fs::path(o.out);
  write_text(target, report_to_json(report));
  for (const auto& e : report.entries) {
    if (!e.counts) err << "failed: " << e.protein_id << " rep " << e.repetition << ": " << e.error << '\n';
  }
  out << format_table(report);
  err << "scored " << report.entries.size() - report.failures << " of " << report.entries.size()
      << " entries; report written to " << target.string() << '\n';
  return report.failures == 0 ? kExitOk : kExitFailure;
}

int inspect_vox_file(const fs::path& path, std::ostream& out) {
  const VoxInspection v = inspect_vox(read_binary_file(path));
  const Dims& d = v.grid.dims();
  const std::size_t occupied = count_occupied(v.grid);
  char line[200];
  std::snprintf(line, sizeof(line), "dims %zu x %zu x %zu\n", d.nx, d.ny, d.nz);
  out << line;
  std::snprintf(line, sizeof(line), "occupied %zu / %zu (%.3f%%)\n", occupied, d.count(),
                100.0 * static_cast<double>(occupied) / static_cast<double>(d.count()));
  out << line;
  if (!v.crc_ok()) {
    std::snprintf(line, sizeof(line), "CRC mismatch (stored %08x, computed %08x)\n", v.stored_crc,
                  v.computed_crc);
    out << line;
    return kExitFailure;
  }
  std::snprintf(line, sizeof(line), "CRC ok (%08x)\n", v.stored_crc);
  out << line;
  return kExitOk;
}

int inspect_manifest(const fs::path& path, std::ostream& out) {
  const auto entries = read_manifest(read_text_file(path));
  std::map<Split, std::size_t> per_split;
  std::map<Split, std::set<std::string>> proteins;
  std::map<std::uint32_t, std::size_t> per_rep;
  for (const auto& e : entries) {
    ++per_split[e.split];
    proteins[e.split].insert(e.protein_id);
    ++per_rep[e.repetition];
  }
  std::size_t total_proteins = 0;
  for (const auto& [split, ids] : proteins) total_proteins += ids.size();
  out << "entries " << entries.size() << ", proteins " << total_proteins << '\n';
  std::string line;
  for (const auto& [split, n] : per_split) {
    if (!line.empty()) line += ", ";
    line += std::string(to_string(split)) + ": " + std::to_string(n) + " entries";
  }
  out << line << '\n';
  for (const auto& [split, ids] : proteins) {
    out << to_string(split) << " proteins: " << ids.size() << '\n';
  }
  for (const auto& [rep, n] : per_rep) out << "repetition " << rep << ": " << n << " entries\n";
  return kExitOk;
}

int cmd_inspect(const Options& o, std::ostream& out, std::ostream&) {
  const fs::path path = o.input;
  if (path.extension() == ".jsonl") return inspect_manifest(path, out);
  return inspect_vox_file(path, out);
}

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"afmvox: synthetic multi-view AFM dataset builder and voxel evaluation"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Build a dataset from a directory of .pdb/.obj files");
  generate->add_option("--input", o.input, "Directory of structures")->required();
  generate->add_option("--out", o.out, "Dataset output directory")->required();
  generate->add_option("--seed", o.seed, "Global seed");
  generate->add_option("--target-res", o.target_res, "High-resolution voxel grid edge");
  generate->add_option("--gt-res", o.gt_res, "Ground-truth voxel grid edge");
  generate->add_option("--image-res", o.image_res, "Rendered image edge in pixels");
  generate->add_option("--views", o.views, "Rendered views per protein");
  generate->add_option("--views-per-entry", o.views_per_entry, "Views per manifest entry");
  generate->add_option("--shade", o.shade, "height-gray or lambert");
  generate->add_option("--fill", o.fill, "flood-fill or ray-parity");
  add_common(*generate, o);

  auto* render = app.add_subcommand("render", "Render one view of a structure to PNG");
  render->add_option("--input", o.input, "Structure file")->required();
  render->add_option("--out", o.out, "Output PNG")->required();
  render->add_option("--quat", o.quat, "Rotation quaternion w,x,y,z")->delimiter(',')->expected(4);
  render->add_option("--seed", o.seed, "Global seed; renders dataset view --view");
  render->add_option("--view", o.view, "View index used with --seed");
  render->add_option("--target-res", o.target_res, "Voxel grid edge");
  render->add_option("--image-res", o.image_res, "Image edge in pixels");
  render->add_option("--shade", o.shade, "height-gray or lambert");
  render->add_option("--fill", o.fill, "flood-fill or ray-parity");
  add_common(*render, o);

  auto* split = app.add_subcommand("split", "Rewrite manifest.jsonl for an existing dataset");
  split->add_option("--input", o.input, "Dataset root")->required();
  split->add_option("--out", o.out, "Manifest path (default <input>/manifest.jsonl)");
  split->add_option("--seed", o.seed, "Global seed (default from dataset_config.json)");
  split->add_option("--gt-res", o.gt_res, "Ground-truth voxel grid edge");
  split->add_option("--views", o.views, "Rendered views per protein");
  split->add_option("--views-per-entry", o.views_per_entry, "Views per manifest entry");

  auto* eval = app.add_subcommand("eval", "Score predicted VoxFiles against a manifest");
  eval->add_option("--input", o.input, "manifest.jsonl inside a dataset root")->required();
  eval->add_option("--predictions", o.predictions, "Directory of <protein>/rep_<r>.afmv")->required();
  eval->add_option("--out", o.out, "Report path (default <dataset>/eval_report.json)");
  eval->add_option("--threshold", o.threshold, "Occupancy threshold");
  add_common(*eval, o);

  auto* inspect = app.add_subcommand("inspect", "Summarize a VoxFile or manifest.jsonl");
  inspect->add_option("--input", o.input, "VoxFile or manifest.jsonl")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(o, out, err);
    if (*render) return cmd_render(o, out, err);
    if (*split) return cmd_split(o, out, err);
    if (*eval) return cmd_eval(o, out, err);
    return cmd_inspect(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kInvalidConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace afmvox
