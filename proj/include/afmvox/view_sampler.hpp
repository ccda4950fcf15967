//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afmvox/geometry.hpp"

namespace afmvox {

inline constexpr std::size_t kViewsPerSample = 25;

// Unit quaternion (w, x, y, z).
struct Rotation {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Rotation identity() { return {}; }
  /// Normalizes (w, x, y, z); throws kInvalidConfig for a zero or non-finite quaternion.
  static Rotation from_quaternion(double w, double x, double y, double z);

  double norm() const;
  std::array<std::array<double, 3>, 3> matrix() const;
  Vec3 apply(Vec3 v) const;
  Vec3 apply_inverse(Vec3 v) const;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct ViewSpec {
  std::string protein_id;
  std::uint32_t view_index = 0;
  Rotation rotation;
  std::uint64_t seed = 0;

  friend bool operator==(const ViewSpec&, const ViewSpec&) = default;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t hash = 0xcbf29ce484222325ULL);

/// FNV-1a over global_seed (8 bytes LE) || protein_id (UTF-8) || index (4 bytes LE).
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view protein_id,
                          std::uint32_t index);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Haar-uniform rotation from three SplitMix64 variates (Shoemake).
Rotation sample_rotation(std::uint64_t seed);

std::vector<ViewSpec> generate_viewset(const std::string& protein_id, std::uint64_t global_seed,
                                       std::size_t n = kViewsPerSample);

}  // namespace afmvox
