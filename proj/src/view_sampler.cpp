//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/view_sampler.hpp"

#include <cmath>
#include <numbers>

#include "afmvox/error.hpp"

namespace afmvox {

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 1e-12) || !std::isfinite(n)) {
    throw Error(ErrorKind::kInvalidConfig, "quaternion must have non-zero finite norm");
  }
  return {w / n, x / n, y / n, z / n};
}

double Rotation::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

std::array<std::array<double, 3>, 3> Rotation::matrix() const {
  return {{
      {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
      {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
      {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)},
  }};
}

Vec3 Rotation::apply(Vec3 v) const {
  const auto m = matrix();
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Vec3 Rotation::apply_inverse(Vec3 v) const {
  const auto m = matrix();
  return {m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z, m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
          m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z};
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t hash) {
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view protein_id, std::uint32_t index) {
  std::uint8_t seed_bytes[8];
  for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<std::uint8_t>(global_seed >> (8 * i));
  std::uint8_t index_bytes[4];
  for (int i = 0; i < 4; ++i) index_bytes[i] = static_cast<std::uint8_t>(index >> (8 * i));

  std::uint64_t h = fnv1a64(seed_bytes);
  h = fnv1a64({reinterpret_cast<const std::uint8_t*>(protein_id.data()), protein_id.size()}, h);
  return fnv1a64(index_bytes, h);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % bound;
}

Rotation sample_rotation(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return Rotation::from_quaternion(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2),
                                   a * std::cos(two_pi * u2), b * std::sin(two_pi * u3));
}

std::vector<ViewSpec> generate_viewset(const std::string& protein_id, std::uint64_t global_seed,
                                       std::size_t n) {
  if (n == 0 || n > kViewsPerSample) {
    throw Error(ErrorKind::kInvalidConfig, "view count must be in [1, 25]");
  }
  std::vector<ViewSpec> views;
  views.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto index = static_cast<std::uint32_t>(i);
    const std::uint64_t seed = derive_seed(global_seed, protein_id, index);
    views.push_back({protein_id, index, sample_rotation(seed), seed});
  }
  return views;
}

}  // namespace afmvox
