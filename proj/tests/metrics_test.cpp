//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>
#include <random>

#include "afmvox/error.hpp"
#include "afmvox/metrics.hpp"
#include "afmvox/vox_file.hpp"
#include "test_util.hpp"

namespace afmvox {
namespace {

namespace fs = std::filesystem;

VoxelGrid random_grid(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  VoxelGrid g({n, n, n});
  for (auto& v : g.values()) v = coin(rng);
  return g;
}

TEST(Iou, Examples) {
  VoxelGrid a({4, 4, 4}), b({4, 4, 4});
  a(0, 0, 0) = a(1, 0, 0) = 1;
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  b(3, 3, 3) = b(2, 3, 3) = 1;
  EXPECT_DOUBLE_EQ(iou(a, b), 0.0);
  b = VoxelGrid({4, 4, 4});
  b(1, 0, 0) = b(2, 0, 0) = 1;
  const IouCounts c = iou_counts(a, b);
  EXPECT_EQ(c.intersection, 1u);
  EXPECT_EQ(c.union_count, 3u);
  EXPECT_DOUBLE_EQ(c.iou(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou(VoxelGrid({2, 2, 2}), VoxelGrid({2, 2, 2})), 1.0);
}

TEST(Iou, MatchesTripleLoop) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const VoxelGrid a = random_grid(rng, 8, 0.3);
    const VoxelGrid b = random_grid(rng, 8, 0.3);
    std::uint64_t inter = 0, uni = 0;
    for (std::size_t z = 0; z < 8; ++z)
      for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) {
          inter += a(x, y, z) && b(x, y, z);
          uni += a(x, y, z) || b(x, y, z);
        }
    const IouCounts c = iou_counts(a, b);
    ASSERT_EQ(c.intersection, inter);
    ASSERT_EQ(c.union_count, uni);
    ASSERT_DOUBLE_EQ(iou(a, b), iou(b, a));
  }
}

TEST(Iou, ThresholdBinarizes) {
  ScalarGrid p({2, 1, 1});
  VoxelGrid t({2, 1, 1});
  p.values()[0] = 0.4f;
  p.values()[1] = 0.39f;
  t.values()[0] = 1;
  EXPECT_DOUBLE_EQ(iou(p, t), 1.0);
  EXPECT_DOUBLE_EQ(iou(p, t, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(iou(p, t, 0.3), 0.5);
}

TEST(Iou, CountsNonIncreasingInThreshold) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  ScalarGrid p({8, 8, 8});
  for (auto& v : p.values()) v = u(rng);
  const VoxelGrid t = random_grid(rng, 8, 0.4);
  IouCounts prev = iou_counts(p, t, 0.0);
  for (double th = 0.05; th <= 1.0; th += 0.05) {
    const IouCounts c = iou_counts(p, t, th);
    EXPECT_LE(c.intersection, prev.intersection);
    EXPECT_LE(c.union_count, prev.union_count);
    prev = c;
  }
}

TEST(Iou, DimensionMismatch) {
  try {
    iou(VoxelGrid({2, 2, 2}), VoxelGrid({2, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShapeMismatch);
  }
}

TEST(Bce, Examples) {
  ScalarGrid p({2, 1, 1});
  VoxelGrid t({2, 1, 1});
  p.values()[0] = 0.9f;
  p.values()[1] = 0.2f;
  t.values()[0] = 1;
  // Independent script: exact inputs give 0.164252033486018, float32-rounded
  // inputs 0.16425204859413997.
  EXPECT_NEAR(bce(p, t), 0.16425204859413997, 1e-12);
  EXPECT_NEAR(bce(p, t), 0.164252033486018, 1e-7);

  ScalarGrid half({3, 3, 3}, {}, 0.5f);
  VoxelGrid any({3, 3, 3});
  any(1, 1, 1) = 1;
  EXPECT_NEAR(bce(half, any), std::log(2.0), 1e-12);

  ScalarGrid perfect({2, 1, 1});
  perfect.values()[0] = 1.0f;
  EXPECT_LE(bce(perfect, t), 1e-6);
  EXPECT_GE(bce(perfect, t), 0.0);
}

TEST(Bce, NonNegativeAndZeroOnlyWhenPerfect) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (int trial = 0; trial < 50; ++trial) {
    ScalarGrid p({4, 4, 4});
    for (auto& v : p.values()) v = u(rng);
    const VoxelGrid t = random_grid(rng, 4, 0.5);
    EXPECT_GT(bce(p, t), 1e-6);
  }
}

class BatchEvalTest : public ::testing::Test {
 protected:
  // Three val proteins with 5-view entries and one train protein with 3.
  void SetUp() override {
    for (const char* id : {"a", "b", "c", "d"}) {
      VoxelGrid truth({4, 4, 4});
      truth(0, 0, 0) = truth(1, 0, 0) = 1;
      fs::create_directories(root.path() / id);
      write_vox_file(root.path() / id / "voxel_32.afmv", truth);
      ManifestEntry e;
      e.protein_id = id;
      e.split = std::string(id) == "d" ? Split::kTrain : Split::kVal;
      e.repetition = 0;
      e.view_indices = e.split == Split::kTrain ? std::vector<std::uint32_t>{0, 1, 2}
                                                : std::vector<std::uint32_t>{0, 1, 2, 3, 4};
      e.voxel_path = std::string(id) + "/voxel_32.afmv";
      for (auto v : e.view_indices) e.view_paths.push_back(std::string(id) + "/views/view_0" + std::to_string(v) + ".png");
      e.rotations_path = std::string(id) + "/rotations.json";
      entries.push_back(e);
    }
  }

  void predict(const std::string& id, const VoxelGrid& g) {
    fs::create_directories(preds.path() / id);
    write_vox_file(preds.path() / id / "rep_0.afmv", g);
  }

  VoxelGrid truth() const { return read_vox_file(root.path() / "a" / "voxel_32.afmv"); }

  testing::TempDir root, preds;
  std::vector<ManifestEntry> entries;
};

TEST_F(BatchEvalTest, PerfectPredictions) {
  for (const char* id : {"a", "b", "c", "d"}) predict(id, truth());
  const EvalReport r = batch_eval(entries, root.path(), preds.path());
  EXPECT_EQ(r.failures, 0u);
  ASSERT_EQ(r.summary.size(), 2u);
  for (const auto& s : r.summary) EXPECT_DOUBLE_EQ(s.mean_iou, 1.0);
}

TEST_F(BatchEvalTest, EmptyPredictions) {
  for (const char* id : {"a", "b", "c", "d"}) predict(id, VoxelGrid({4, 4, 4}));
  const EvalReport r = batch_eval(entries, root.path(), preds.path());
  for (const auto& s : r.summary) EXPECT_DOUBLE_EQ(s.mean_iou, 0.0);
}

TEST_F(BatchEvalTest, MixedMeanAndTable) {
  VoxelGrid half({4, 4, 4});
  half(0, 0, 0) = 1;
  predict("a", truth());
  predict("b", half);
  predict("c", VoxelGrid({4, 4, 4}));
  predict("d", truth());
  const EvalReport r = batch_eval(entries, root.path(), preds.path(), 0.4, 3);
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(r.summary[0].n_views, 3u);
  EXPECT_EQ(r.summary[0].split, Split::kTrain);
  EXPECT_EQ(r.summary[1].n_views, 5u);
  EXPECT_EQ(r.summary[1].count, 3u);
  EXPECT_DOUBLE_EQ(r.summary[1].mean_iou, 0.5);
  EXPECT_EQ(format_table(r),
            "#views   Train IoU  Validation IoU  Test IoU \n"
            "3        1.00       -               -        \n"
            "5        -          0.50            -        \n");
}

TEST_F(BatchEvalTest, MissingAndMismatchedPredictionsAreFailures) {
  predict("a", truth());
  predict("b", VoxelGrid({8, 8, 8}));
  predict("d", truth());
  const EvalReport r = batch_eval(entries, root.path(), preds.path());
  EXPECT_EQ(r.failures, 2u);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_EQ(r.entries[1].protein_id, "b");
  EXPECT_FALSE(r.entries[1].counts.has_value());
  EXPECT_NE(r.entries[1].error.find("ShapeMismatch"), std::string::npos);
  EXPECT_FALSE(r.entries[2].counts.has_value());

  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j.at("failures"), 2);
  EXPECT_DOUBLE_EQ(j.at("threshold").get<double>(), 0.4);
  EXPECT_TRUE(j.at("entries")[2].at("iou").is_null());
  EXPECT_EQ(j.at("entries")[0].at("intersection"), 2);
}

TEST(PredictionPath, Layout) {
  ManifestEntry e;
  e.protein_id = "1ABC";
  e.repetition = 3;
  EXPECT_EQ(prediction_path("preds", e), fs::path("preds") / "1ABC" / "rep_3.afmv");
}

}  // namespace
}  // namespace afmvox
