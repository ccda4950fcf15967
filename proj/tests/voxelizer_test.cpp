//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "afmvox/error.hpp"
#include "afmvox/voxelizer.hpp"
#include "test_util.hpp"

namespace afmvox {
namespace {

VoxelGrid shell(std::size_t n, std::size_t lo, std::size_t hi) {
  VoxelGrid g({n, n, n});
  for (std::size_t k = lo; k <= hi; ++k)
    for (std::size_t j = lo; j <= hi; ++j)
      for (std::size_t i = lo; i <= hi; ++i)
        if (i == lo || i == hi || j == lo || j == hi || k == lo || k == hi) g(i, j, k) = 1;
  return g;
}

// Count of voxel centers (k + 0.5) inside a ball, by enumeration.
std::size_t ball_centers(std::size_t n, Vec3 c, double r) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p{i + 0.5, j + 0.5, k + 0.5};
        if (dot(p - c, p - c) <= r * r) ++count;
      }
  return count;
}

TEST(FitTransform, LongestAxisSpansResolution) {
  const GridTransform t = fit_transform({{0, 0, 0}, {2, 1, 4}}, 16);
  EXPECT_DOUBLE_EQ(t.pitch, 0.25);
  // x spans 8 voxels -> 4 on each side; y spans 4 -> 6 on each side; z fills.
  EXPECT_DOUBLE_EQ(t.origin.x, -1.0);
  EXPECT_DOUBLE_EQ(t.origin.y, -1.5);
  EXPECT_DOUBLE_EQ(t.origin.z, 0.0);
}

TEST(FitTransform, OddPaddingGoesHigh) {
  // y spans 5 of 16 voxels: 5 below, 6 above.
  const GridTransform t = fit_transform({{0, 0, 0}, {16, 5, 16}}, 16);
  EXPECT_DOUBLE_EQ(t.origin.y, -5.0);
}

TEST(FitTransform, Errors) {
  EXPECT_THROW(fit_transform({{0, 0, 0}, {0, 0, 0}}, 16), Error);
  try {
    fit_transform({{0, 0, 0}, {1, 1, 1}}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
  }
  try {
    fit_transform({{1, 1, 1}, {1, 1, 1}}, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateGeometry);
  }
}

TEST(TriangleBoxOverlap, Basic) {
  const Vec3 c{0, 0, 0}, h{0.5, 0.5, 0.5};
  EXPECT_TRUE(triangle_box_overlap(c, h, {-1, -1, 0}, {1, -1, 0}, {0, 1, 0}));
  EXPECT_FALSE(triangle_box_overlap(c, h, {2, 2, 2}, {3, 2, 2}, {2, 3, 2}));
  // Plane crosses the box bounds but the triangle sits in a far corner.
  EXPECT_FALSE(triangle_box_overlap(c, h, {0.9, 0.9, 0}, {3, 0.9, 0}, {0.9, 3, 0}));
  // Diagonal plane missing the box only on the cross-product axes.
  EXPECT_FALSE(triangle_box_overlap(c, h, {1.2, 0, -1}, {0, 1.2, -1}, {0.6, 0.6, 1}));
  // Triangle entirely inside.
  EXPECT_TRUE(triangle_box_overlap(c, h, {0.1, 0.1, 0.1}, {0.2, 0.1, 0.1}, {0.1, 0.2, 0.1}));
  // Touching a face counts.
  EXPECT_TRUE(triangle_box_overlap(c, h, {0.5, -1, -1}, {0.5, 1, -1}, {0.5, 0, 1}));
}

TEST(TriangleBoxOverlap, AgreesWithSampling) {
  // A triangle point strictly inside the box must imply overlap.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  const Vec3 c{0, 0, 0}, h{0.5, 0.5, 0.5};
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, d{u(rng), u(rng), u(rng)};
    bool inside = false;
    for (int s = 0; s < 200 && !inside; ++s) {
      double p = w(rng), q = w(rng);
      if (p + q > 1) p = 1 - p, q = 1 - q;
      const Vec3 x = a + (b - a) * p + (d - a) * q;
      inside = std::abs(x.x) < 0.5 && std::abs(x.y) < 0.5 && std::abs(x.z) < 0.5;
    }
    if (inside) {
      EXPECT_TRUE(triangle_box_overlap(c, h, a, b, d)) << trial;
    }
  }
}

TEST(VoxelizeMesh, UnitCubeFillsGrid) {
  const TriangleMesh cube = parse_obj(read_text_file(testing::data_dir() / "cube.obj"));
  const VoxelGrid g = voxelize_mesh(cube, {.target_res = 16});
  EXPECT_EQ(g.dims(), (Dims{16, 16, 16}));
  EXPECT_EQ(count_occupied(g), 16u * 16u * 16u);
  const VoxelGrid p = voxelize_mesh(cube, {.target_res = 16, .fill = FillMode::kRayParity});
  EXPECT_EQ(count_occupied(p), 16u * 16u * 16u);
}

TEST(VoxelizeMesh, OpenTriangleIsSurfaceOnly) {
  TriangleMesh tri;
  tri.vertices = {{0, 0, 0}, {1, 0.2, 0.3}, {0.3, 1, 0.7}};
  tri.triangles = {{0, 1, 2}};
  const VoxelizeOptions opts{.target_res = 32};
  const VoxelGrid g = voxelize_mesh(tri, opts);
  const GridTransform t = fit_transform(compute_aabb(tri), 32);
  const VoxelGrid surface = voxelize_surface(tri, {32, 32, 32}, t);
  EXPECT_GT(count_occupied(surface), 0u);
  EXPECT_EQ(g, surface);
  EXPECT_EQ(solid_fill(surface), surface);
}

TEST(VoxelizeMesh, IcosphereVolume) {
  const TriangleMesh sphere = testing::icosphere(3);
  const VoxelGrid g = voxelize_mesh(sphere, {.target_res = 64});
  const double fraction = static_cast<double>(count_occupied(g)) / (64.0 * 64.0 * 64.0);
  EXPECT_NEAR(fraction / (std::numbers::pi / 6.0), 1.0, 0.03);
}

TEST(VoxelizeMesh, ClosedShellIsNearCenterRule) {
  // Icosphere of radius 1 fitted into 32^3: close to the enumerated ball of
  // radius 16 voxels about the grid center.
  const TriangleMesh sphere = testing::icosphere(4);
  const VoxelGrid g = voxelize_mesh(sphere, {.target_res = 32});
  const auto expected = static_cast<double>(ball_centers(32, {16, 16, 16}, 16.0));
  EXPECT_NEAR(static_cast<double>(count_occupied(g)) / expected, 1.0, 0.03);
}

TEST(VoxelizeMesh, ParityMatchesFloodOnWatertightMesh) {
  const TriangleMesh sphere = testing::icosphere(3, 1.0, {0.3, -0.2, 0.1});
  const VoxelGrid flood = voxelize_mesh(sphere, {.target_res = 48});
  const VoxelGrid parity = voxelize_mesh(sphere, {.target_res = 48, .fill = FillMode::kRayParity});
  std::size_t differ = 0;
  for (std::size_t i = 0; i < flood.size(); ++i) differ += flood.values()[i] != parity.values()[i];
  EXPECT_LT(static_cast<double>(differ), 0.02 * static_cast<double>(count_occupied(flood)));
}

TEST(VoxelizeMesh, BoundingBoxSpansLongestAxis) {
  const TriangleMesh box = testing::box_mesh({0, 0, 0}, {3.0, 1.3, 0.7});
  const VoxelGrid g = voxelize_mesh(box, {.target_res = 24});
  const IndexBox b = occupied_bounds(g);
  ASSERT_FALSE(b.empty);
  EXPECT_EQ(b.lo[0], 0u);
  EXPECT_EQ(b.hi[0], 23u);
  // Short axes are centered.
  EXPECT_NEAR(static_cast<double>(b.lo[1] + b.hi[1]) / 2.0, 11.5, 1.0);
  EXPECT_NEAR(static_cast<double>(b.lo[2] + b.hi[2]) / 2.0, 11.5, 1.0);
}

TEST(VoxelizeMesh, WorkerCountDoesNotChangeOutput) {
  const TriangleMesh sphere = testing::icosphere(3, 1.0, {0.1, 0.2, 0.3});
  const VoxelGrid one = voxelize_mesh(sphere, {.target_res = 40, .workers = 1});
  EXPECT_EQ(voxelize_mesh(sphere, {.target_res = 40, .workers = 3}), one);
  EXPECT_EQ(voxelize_mesh(sphere, {.target_res = 40, .fill = FillMode::kRayParity, .workers = 1}),
            voxelize_mesh(sphere, {.target_res = 40, .fill = FillMode::kRayParity, .workers = 4}));
}

TEST(VoxelizeMesh, TranslationByWholeVoxelsShiftsPattern) {
  const TriangleMesh sphere = testing::icosphere(2, 3.1, {8.2, 7.9, 8.05});
  const Dims dims{24, 24, 24};
  const GridTransform t{{0, 0, 0}, 1.0};
  const VoxelGrid a = voxelize_mesh_in(sphere, dims, t);
  TriangleMesh moved = sphere;
  for (auto& v : moved.vertices) v = v + Vec3{3, 0, 2};
  const VoxelGrid b = voxelize_mesh_in(moved, dims, t);
  ASSERT_GT(count_occupied(a), 0u);
  EXPECT_EQ(count_occupied(a), count_occupied(b));
  for (std::size_t k = 0; k + 2 < 24; ++k)
    for (std::size_t j = 0; j < 24; ++j)
      for (std::size_t i = 0; i + 3 < 24; ++i) ASSERT_EQ(a(i, j, k), b(i + 3, j, k + 2));
}

TEST(VoxelizeMesh, EmptyMeshThrows) {
  EXPECT_THROW(voxelize_mesh(TriangleMesh{}, {.target_res = 16}), Error);
}

TEST(SolidFill, HollowShellFillsInterior) {
  const VoxelGrid s = shell(9, 2, 6);
  const VoxelGrid f = solid_fill(s);
  EXPECT_EQ(count_occupied(f), 125u);
  for (std::size_t k = 3; k <= 5; ++k)
    for (std::size_t j = 3; j <= 5; ++j)
      for (std::size_t i = 3; i <= 5; ++i) EXPECT_EQ(f(i, j, k), 1);
}

TEST(SolidFill, EmptyStaysEmpty) {
  const VoxelGrid g({7, 5, 3});
  EXPECT_EQ(solid_fill(g), g);
}

TEST(SolidFill, HoleLeaksInterior) {
  VoxelGrid s = shell(9, 2, 6);
  s(4, 4, 2) = 0;
  EXPECT_EQ(solid_fill(s), s);
}

TEST(SolidFill, DiagonalGapDoesNotLeak) {
  // Removing an edge voxel leaves only a diagonal opening; 6-connected flood
  // cannot pass it.
  VoxelGrid s = shell(9, 2, 6);
  s(2, 2, 4) = 0;
  EXPECT_EQ(count_occupied(solid_fill(s)), 124u);
}

TEST(SolidFill, Idempotent) {
  const VoxelGrid surface = voxelize_surface(testing::icosphere(2), {20, 20, 20},
                                             fit_transform(compute_aabb(testing::icosphere(2)), 20));
  const VoxelGrid once = solid_fill(surface);
  EXPECT_EQ(solid_fill(once), once);
}

TEST(VoxelizeAtoms, SingleAtomRadiusEight) {
  const VoxelGrid g = voxelize_atoms_in(testing::single_atom({8, 8, 8}, 8.0), {16, 16, 16}, {{0, 0, 0}, 1.0});
  // Enumerated independently: centers (k + 0.5) within radius 8 of (8, 8, 8).
  EXPECT_EQ(count_occupied(g), 2176u);
  const double analytic = 4.0 / 3.0 * std::numbers::pi * 512.0;
  EXPECT_NEAR(static_cast<double>(count_occupied(g)) / analytic, 1.0, 0.03);
}

TEST(VoxelizeAtoms, FittedAtomMatchesEnumeration) {
  // One atom fitted into 16^3 has radius 8 voxels about the grid center.
  const VoxelGrid g = voxelize_atoms(testing::single_atom({1, 2, 3}, 1.7), {.target_res = 16});
  EXPECT_EQ(count_occupied(g), ball_centers(16, {8, 8, 8}, 8.0));
}

TEST(VoxelizeAtoms, DisjointUnionAddsCoincidentIsIdempotent) {
  const Dims dims{32, 16, 16};
  const GridTransform t{{0, 0, 0}, 1.0};
  const Molecule a = testing::single_atom({6, 8, 8}, 4.0);
  const Molecule b = testing::single_atom({22, 8, 8}, 5.0);
  Molecule both = a;
  both.atoms.push_back(b.atoms[0]);
  EXPECT_EQ(count_occupied(voxelize_atoms_in(both, dims, t)),
            count_occupied(voxelize_atoms_in(a, dims, t)) + count_occupied(voxelize_atoms_in(b, dims, t)));
  Molecule twice = a;
  twice.atoms.push_back(a.atoms[0]);
  EXPECT_EQ(voxelize_atoms_in(twice, dims, t), voxelize_atoms_in(a, dims, t));
}

TEST(VoxelizeAtoms, ConvergesWithResolution) {
  for (double r : {8.0, 12.0, 20.0}) {
    const auto n = static_cast<std::size_t>(2 * r + 4);
    const Vec3 c{n / 2.0 + 0.13, n / 2.0 - 0.21, n / 2.0 + 0.07};
    const VoxelGrid g = voxelize_atoms_in(testing::single_atom(c, r), {n, n, n}, {{0, 0, 0}, 1.0});
    const double analytic = 4.0 / 3.0 * std::numbers::pi * r * r * r;
    EXPECT_NEAR(static_cast<double>(count_occupied(g)) / analytic, 1.0, 0.03) << r;
  }
}

TEST(VoxelizeAtoms, WorkersAndProteinFixture) {
  const Geometry g = load_structure(testing::data_dir() / "proteins" / "prot_c.pdb");
  const VoxelGrid one = voxelize(g, {.target_res = 64, .workers = 1});
  EXPECT_EQ(voxelize(g, {.target_res = 64, .workers = 3}), one);
  EXPECT_GT(count_occupied(one), 0u);
  EXPECT_EQ(one.dims(), (Dims{64, 64, 64}));
}

TEST(Downsample, Examples) {
  VoxelGrid single({256, 256, 256});
  single(200, 17, 99) = 1;
  const VoxelGrid d = downsample(single);
  EXPECT_EQ(d.dims(), (Dims{32, 32, 32}));
  EXPECT_EQ(count_occupied(d), 1u);
  EXPECT_EQ(d(25, 2, 12), 1);

  const VoxelGrid full({256, 256, 256}, {}, 1);
  EXPECT_EQ(count_occupied(downsample(full)), 32u * 32u * 32u);

  VoxelGrid block({16, 16, 16});
  block(3, 5, 7) = 1;
  const VoxelGrid b = downsample(block, 8);
  const std::vector<std::uint8_t> expected{1, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_TRUE(std::equal(b.values().begin(), b.values().end(), expected.begin(), expected.end()));
}

TEST(Downsample, ScalesPitchAndKeepsOrigin) {
  const VoxelGrid g({16, 16, 16}, {{1, 2, 3}, 0.5});
  const VoxelGrid d = downsample(g, 4);
  EXPECT_EQ(d.transform().origin, (Vec3{1, 2, 3}));
  EXPECT_DOUBLE_EQ(d.transform().pitch, 2.0);
}

TEST(Downsample, Monotone) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.01);
  VoxelGrid a({32, 32, 32});
  for (auto& v : a.values()) v = coin(rng);
  VoxelGrid b = a;
  for (auto& v : b.values()) v = v || coin(rng);
  const VoxelGrid da = downsample(a, 8);
  const VoxelGrid db = downsample(b, 8);
  for (std::size_t i = 0; i < da.size(); ++i) EXPECT_LE(da.values()[i], db.values()[i]);
}

TEST(Downsample, NonDivisibleThrows) {
  try {
    downsample(VoxelGrid({20, 16, 16}), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShapeMismatch);
  }
}

}  // namespace
}  // namespace afmvox
