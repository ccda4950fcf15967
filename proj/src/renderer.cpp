//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afmvox/error.hpp"
#include "afmvox/parallel.hpp"

namespace afmvox {

std::string_view to_string(ShadeMode mode) {
  return mode == ShadeMode::kLambert ? "lambert" : "height-gray";
}

std::optional<ShadeMode> parse_shade_mode(std::string_view text) {
  if (text == "height-gray") return ShadeMode::kHeightGray;
  if (text == "lambert") return ShadeMode::kLambert;
  return std::nullopt;
}

OrthoCamera::OrthoCamera(std::size_t grid_edge, const Rotation& rotation, std::size_t resolution)
    : resolution_(resolution) {
  const double edge = static_cast<double>(grid_edge);
  depth_ = edge * std::sqrt(3.0);
  span_ = depth_;
  samples_ = static_cast<std::size_t>(std::floor(depth_ / kStep)) + 1;
  center_ = {edge / 2, edge / 2, edge / 2};
  right_ = rotation.apply_inverse({1, 0, 0});
  up_ = rotation.apply_inverse({0, 1, 0});
  back_ = rotation.apply_inverse({0, 0, 1});
  dir_ = back_ * -1.0;
}

Vec3 OrthoCamera::ray_origin(std::size_t col, std::size_t row) const {
  const double res = static_cast<double>(resolution_);
  const double s = ((static_cast<double>(col) + 0.5) / res - 0.5) * span_;
  const double t = (0.5 - (static_cast<double>(row) + 0.5) / res) * span_;
  return center_ + right_ * s + up_ * t + back_ * (depth_ / 2);
}

namespace {

// Parameter interval [enter, leave] of origin + l * dir inside [lo, hi].
bool clip_to_box(Vec3 origin, Vec3 dir, Vec3 lo, Vec3 hi, double& enter, double& leave) {
  enter = -std::numeric_limits<double>::infinity();
  leave = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(dir[a]) < 1e-15) {
      if (origin[a] < lo[a] || origin[a] > hi[a]) return false;
      continue;
    }
    double t0 = (lo[a] - origin[a]) / dir[a];
    double t1 = (hi[a] - origin[a]) / dir[a];
    if (t0 > t1) std::swap(t0, t1);
    enter = std::max(enter, t0);
    leave = std::min(leave, t1);
  }
  return enter <= leave;
}

}  // namespace

HeightMap render_heightmap(const VoxelGrid& grid, const Rotation& rotation, std::size_t resolution,
                           unsigned workers) {
  const Dims& d = grid.dims();
  if (!d.is_cube() || d.nx == 0) throw Error(ErrorKind::kShapeMismatch, "renderer needs a cubic grid");
  if (resolution == 0) throw Error(ErrorKind::kInvalidConfig, "image resolution must be positive");

  const OrthoCamera camera(d.nx, rotation, resolution);
  const double pitch = grid.transform().pitch;
  HeightMap hm;
  hm.width = hm.height = resolution;
  hm.pixel_size = camera.image_span() / static_cast<double>(resolution) * pitch;
  hm.values.assign(resolution * resolution, 0.0);

  const IndexBox bounds = occupied_bounds(grid);
  if (bounds.empty) return hm;
  // Samples outside the occupied box cannot hit; the margin keeps boundary
  // samples in the marched range.
  constexpr double kMargin = 1e-6;
  const Vec3 lo{static_cast<double>(bounds.lo[0]) - kMargin, static_cast<double>(bounds.lo[1]) - kMargin,
                static_cast<double>(bounds.lo[2]) - kMargin};
  const Vec3 hi{static_cast<double>(bounds.hi[0] + 1) + kMargin, static_cast<double>(bounds.hi[1] + 1) + kMargin,
                static_cast<double>(bounds.hi[2] + 1) + kMargin};
  const Vec3 dir = camera.direction();
  const long n = static_cast<long>(d.nx);
  const long last_sample = static_cast<long>(camera.sample_count()) - 1;

  parallel_for(resolution, workers, [&](std::size_t row) {
    for (std::size_t col = 0; col < resolution; ++col) {
      const Vec3 origin = camera.ray_origin(col, row);
      double enter = 0.0, leave = 0.0;
      if (!clip_to_box(origin, dir, lo, hi, enter, leave)) continue;
      const long k0 = std::max(0L, static_cast<long>(std::floor(enter / OrthoCamera::kStep)));
      const long k1 = std::min(last_sample, static_cast<long>(std::ceil(leave / OrthoCamera::kStep)));
      for (long k = k0; k <= k1; ++k) {
        const double lambda = static_cast<double>(k) * OrthoCamera::kStep;
        const Vec3 p = origin + dir * lambda;
        const long i = static_cast<long>(std::floor(p.x));
        const long j = static_cast<long>(std::floor(p.y));
        const long m = static_cast<long>(std::floor(p.z));
        if (i < 0 || j < 0 || m < 0 || i >= n || j >= n || m >= n) continue;
        if (grid(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(m))) {
          hm.values[row * resolution + col] = (camera.depth() - lambda) * pitch;
          break;
        }
      }
    }
  });
  return hm;
}

RgbImage shade(const HeightMap& hm, ShadeMode mode) {
  RgbImage img(hm.width, hm.height);
  auto put = [&](std::size_t idx, std::uint8_t g) {
    img.pixels[idx * 3] = img.pixels[idx * 3 + 1] = img.pixels[idx * 3 + 2] = g;
  };

  if (mode == ShadeMode::kHeightGray) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : hm.values) {
      if (v <= 0.0) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (std::size_t idx = 0; idx < hm.values.size(); ++idx) {
      const double v = hm.values[idx];
      if (v <= 0.0) continue;
      const double g = hi > lo ? 30.0 + (v - lo) / (hi - lo) * 225.0 : 255.0;
      put(idx, static_cast<std::uint8_t>(std::lround(g)));
    }
    return img;
  }

  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const Vec3 light{inv_sqrt3, inv_sqrt3, inv_sqrt3};
  const auto w = static_cast<long>(hm.width);
  const auto h = static_cast<long>(hm.height);
  auto hit = [&](long c, long r) { return c >= 0 && r >= 0 && c < w && r < h && hm.at(c, r) > 0.0; };
  // Central difference, one-sided next to the silhouette, flat when isolated.
  auto derivative = [&](long c, long r, long dc, long dr) {
    const bool fwd = hit(c + dc, r + dr);
    const bool back = hit(c - dc, r - dr);
    const double center = hm.at(c, r);
    const double hf = fwd ? hm.at(c + dc, r + dr) : center;
    const double hb = back ? hm.at(c - dc, r - dr) : center;
    const int span = static_cast<int>(fwd) + static_cast<int>(back);
    return span == 0 ? 0.0 : (hf - hb) / (span * hm.pixel_size);
  };
  for (long r = 0; r < h; ++r) {
    for (long c = 0; c < w; ++c) {
      if (!hit(c, r)) continue;
      const double dh_dx = derivative(c, r, 1, 0);
      const double dh_dy = -derivative(c, r, 0, 1);  // rows grow downward
      const Vec3 normal{-dh_dx, -dh_dy, 1.0};
      const double intensity = std::max(0.0, dot(normal, light) / norm(normal));
      put(static_cast<std::size_t>(r * w + c), static_cast<std::uint8_t>(std::lround(255.0 * intensity)));
    }
  }
  return img;
}

}  // namespace afmvox
