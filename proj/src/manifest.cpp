//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/manifest.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "afmvox/error.hpp"
#include "afmvox/view_sampler.hpp"

namespace afmvox {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "val") return Split::kVal;
  if (text == "test") return Split::kTest;
  return std::nullopt;
}

std::string write_manifest(std::span<const ManifestEntry> entries) {
  std::string out;
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["protein_id"] = e.protein_id;
    j["split"] = to_string(e.split);
    j["repetition"] = e.repetition;
    j["view_indices"] = e.view_indices;
    j["voxel"] = e.voxel_path;
    j["views"] = e.view_paths;
    j["rotations"] = e.rotations_path;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    auto fail = [&](const std::string& what) -> void {
      throw Error(ErrorKind::kManifestError, what, line_no);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      fail(std::string("invalid JSON: ") + ex.what());
    }
    if (!j.is_object()) fail("entry must be a JSON object");
    for (const char* key : {"protein_id", "split", "repetition", "view_indices", "voxel", "views", "rotations"}) {
      if (!j.contains(key)) fail(std::string("missing \"") + key + "\" key");
    }

    const auto is_index = [](const nlohmann::json& v) { return v.is_number_unsigned(); };
    if (!is_index(j["repetition"])) fail("repetition must be a non-negative integer");
    if (!j["view_indices"].is_array() || !std::ranges::all_of(j["view_indices"], is_index)) {
      fail("view_indices must be an array of non-negative integers");
    }

    ManifestEntry e;
    try {
      e.protein_id = j.at("protein_id").get<std::string>();
      const auto split = parse_split(j.at("split").get<std::string>());
      if (!split) fail("unknown split");
      e.split = *split;
      e.repetition = j.at("repetition").get<std::uint32_t>();
      e.view_indices = j.at("view_indices").get<std::vector<std::uint32_t>>();
      e.voxel_path = j.at("voxel").get<std::string>();
      e.view_paths = j.at("views").get<std::vector<std::string>>();
      e.rotations_path = j.at("rotations").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
      fail(std::string("wrong value type: ") + ex.what());
    }
    if (e.protein_id.empty()) fail("empty protein_id");
    if (e.repetition >= kRepetitions) fail("repetition out of range");
    if (e.view_indices.empty()) fail("empty view_indices");
    if (std::ranges::any_of(e.view_indices, [](std::uint32_t v) { return v >= kViewsPerSample; })) {
      fail("view index out of range");
    }
    if (std::set(e.view_indices.begin(), e.view_indices.end()).size() != e.view_indices.size()) {
      fail("duplicate view index");
    }
    if (e.view_paths.size() != e.view_indices.size()) fail("views and view_indices differ in length");
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace afmvox
