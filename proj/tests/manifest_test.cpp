//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "afmvox/error.hpp"
#include "afmvox/manifest.hpp"

namespace afmvox {
namespace {

ManifestEntry sample_entry(std::string id, Split split, std::uint32_t rep) {
  ManifestEntry e;
  e.protein_id = std::move(id);
  e.split = split;
  e.repetition = rep;
  e.view_indices = {4, 0, 17};
  e.voxel_path = e.protein_id + "/voxel_32.afmv";
  for (auto v : e.view_indices) e.view_paths.push_back(e.protein_id + "/views/view_" + std::to_string(v) + ".png");
  e.rotations_path = e.protein_id + "/rotations.json";
  return e;
}

std::size_t manifest_error_line(const std::string& text) {
  try {
    read_manifest(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kManifestError);
    return e.line().value_or(0);
  }
  ADD_FAILURE() << "accepted: " << text;
  return 0;
}

const char* kGood =
    R"({"protein_id":"p","split":"train","repetition":0,"view_indices":[1],"voxel":"p/v.afmv","views":["p/a.png"],"rotations":"p/r.json"})";

TEST(Manifest, EmptyListIsEmptyFile) {
  EXPECT_EQ(write_manifest({}), "");
  EXPECT_TRUE(read_manifest("").empty());
}

TEST(Manifest, KeyOrderIsFixed) {
  const std::vector<ManifestEntry> entries{sample_entry("1ABC", Split::kVal, 2)};
  EXPECT_EQ(write_manifest(entries),
            R"({"protein_id":"1ABC","split":"val","repetition":2,"view_indices":[4,0,17],)"
            R"("voxel":"1ABC/voxel_32.afmv","views":["1ABC/views/view_4.png","1ABC/views/view_0.png",)"
            R"("1ABC/views/view_17.png"],"rotations":"1ABC/rotations.json"})"
            "\n");
}

TEST(Manifest, RoundTrip) {
  const std::vector<ManifestEntry> entries{sample_entry("a", Split::kTrain, 0), sample_entry("b", Split::kVal, 3),
                                           sample_entry("c", Split::kTest, 1)};
  EXPECT_EQ(read_manifest(write_manifest(entries)), entries);
}

TEST(Manifest, BlankLinesAreSkippedButCounted) {
  const std::string text = std::string("\n") + kGood + "\n\n" + kGood + "\n";
  EXPECT_EQ(read_manifest(text).size(), 2u);
  EXPECT_EQ(manifest_error_line(std::string(kGood) + "\n\n{\"protein_id\":\"x\"}\n"), 3u);
}

TEST(Manifest, MissingSplitReportsLine) {
  std::string bad = kGood;
  bad.erase(bad.find(R"("split":"train",)"), std::string(R"("split":"train",)").size());
  EXPECT_EQ(manifest_error_line(std::string(kGood) + "\n" + bad + "\n"), 2u);
}

TEST(Manifest, SchemaViolations) {
  auto with = [](const std::string& from, const std::string& to) {
    std::string s = kGood;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_EQ(manifest_error_line("not json"), 1u);
  EXPECT_EQ(manifest_error_line("[1,2]"), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("train")", R"("dev")")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("repetition":0)", R"("repetition":4)")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("repetition":0)", R"("repetition":-1)")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("repetition":0)", R"("repetition":"0")")), 1u);
  EXPECT_EQ(manifest_error_line(with("[1]", "[]")), 1u);
  EXPECT_EQ(manifest_error_line(with("[1]", "[25]")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"([1],"voxel")", R"([1,1],"voxel")")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"(["p/a.png"])", R"(["p/a.png","p/b.png"])")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("p/r.json")", "7")), 1u);
  EXPECT_EQ(manifest_error_line(with(R"("protein_id":"p")", R"("protein_id":"")")), 1u);
}

TEST(Split, Names) {
  EXPECT_EQ(to_string(Split::kVal), "val");
  EXPECT_EQ(parse_split("test"), Split::kTest);
  EXPECT_FALSE(parse_split("validation").has_value());
}

}  // namespace
}  // namespace afmvox
