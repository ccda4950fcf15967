//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/voxelizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "afmvox/error.hpp"
#include "afmvox/parallel.hpp"

namespace afmvox {
namespace {

// Voxel layers per unit of parallel work. Work items own whole layers, so
// concurrent writes never touch the same byte.
constexpr std::size_t kSlab = 4;

struct Triangle {
  Vec3 a, b, c;
};

std::vector<Triangle> to_grid_space(const TriangleMesh& mesh, const GridTransform& transform) {
  std::vector<Triangle> out;
  out.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    out.push_back({transform.to_grid(mesh.vertices.at(t[0])), transform.to_grid(mesh.vertices.at(t[1])),
                   transform.to_grid(mesh.vertices.at(t[2]))});
  }
  return out;
}

struct IndexRange {
  long lo = 0;
  long hi = -1;
  bool empty() const { return lo > hi; }
};

IndexRange clamp_range(long lo, long hi, std::size_t n) {
  return {std::max(lo, 0L), std::min(hi, static_cast<long>(n) - 1)};
}

std::size_t slab_count(std::size_t n) { return (n + kSlab - 1) / kSlab; }

// Assigns each item to every slab its inclusive layer range touches.
std::vector<std::vector<std::uint32_t>> bucket_by_slab(const std::vector<IndexRange>& ranges,
                                                       std::size_t n) {
  std::vector<std::vector<std::uint32_t>> buckets(slab_count(n));
  for (std::size_t t = 0; t < ranges.size(); ++t) {
    if (ranges[t].empty()) continue;
    const auto first = static_cast<std::size_t>(ranges[t].lo) / kSlab;
    const auto last = static_cast<std::size_t>(ranges[t].hi) / kSlab;
    for (std::size_t s = first; s <= last; ++s) buckets[s].push_back(static_cast<std::uint32_t>(t));
  }
  return buckets;
}

IndexRange slab_layers(std::size_t slab, std::size_t n) {
  return {static_cast<long>(slab * kSlab), static_cast<long>(std::min(n, (slab + 1) * kSlab)) - 1};
}

IndexRange intersect(IndexRange a, IndexRange b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

std::array<std::size_t, 3> decode(std::size_t idx, const Dims& d) {
  return {idx % d.nx, (idx / d.nx) % d.ny, idx / (d.nx * d.ny)};
}

void validate_res(std::size_t res) {
  if (res < kMinTargetRes || res > kMaxTargetRes) {
    throw Error(ErrorKind::kInvalidConfig,
                "target resolution must be in [8, 1024], got " + std::to_string(res));
  }
}

double axis_min(const Triangle& t, int a) { return std::min({t.a[a], t.b[a], t.c[a]}); }
double axis_max(const Triangle& t, int a) { return std::max({t.a[a], t.b[a], t.c[a]}); }

// ---------------------------------------------------------------------------
// Center lattice. Bit 2a of a voxel marks the edge to its -a neighbor as
// crossing the surface, bit 2a+1 the edge to its +a neighbor. Edges off the
// grid lead to the exterior.

std::vector<std::uint8_t> blocked_edges(const std::vector<Triangle>& tris, const Dims& dims,
                                        unsigned workers) {
  std::vector<std::uint8_t> bits(dims.count(), 0);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    const int s = (a == 2) ? 1 : 2;  // slab axis; one of b, c
    const std::size_t na = dims[a];

    std::vector<IndexRange> line_b(tris.size()), line_c(tris.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
      // Lines along a pass through (j + 1/2, k + 1/2) in the (b, c) plane.
      line_b[t] = clamp_range(static_cast<long>(std::ceil(axis_min(tris[t], b) - 0.5 - 1e-9)),
                              static_cast<long>(std::floor(axis_max(tris[t], b) - 0.5 + 1e-9)), dims[b]);
      line_c[t] = clamp_range(static_cast<long>(std::ceil(axis_min(tris[t], c) - 0.5 - 1e-9)),
                              static_cast<long>(std::floor(axis_max(tris[t], c) - 0.5 + 1e-9)), dims[c]);
      if (line_b[t].empty()) line_c[t] = {0, -1};
    }
    const auto& slab_ranges = (s == b) ? line_b : line_c;
    const auto buckets = bucket_by_slab(slab_ranges, dims[s]);

    auto voxel_index = [&](std::size_t ia, std::size_t ib, std::size_t ic) {
      std::array<std::size_t, 3> p{};
      p[a] = ia;
      p[b] = ib;
      p[c] = ic;
      return p[0] + dims.nx * (p[1] + dims.ny * p[2]);
    };
    auto block = [&](long edge, std::size_t ib, std::size_t ic) {
      if (edge < 0 || edge > static_cast<long>(na)) return;
      if (edge >= 1) bits[voxel_index(static_cast<std::size_t>(edge - 1), ib, ic)] |= std::uint8_t(1u << (2 * a + 1));
      if (edge < static_cast<long>(na)) bits[voxel_index(static_cast<std::size_t>(edge), ib, ic)] |= std::uint8_t(1u << (2 * a));
    };

    parallel_for(buckets.size(), workers, [&](std::size_t slab) {
      const IndexRange layers = slab_layers(slab, dims[s]);
      for (std::uint32_t t : buckets[slab]) {
        const Triangle& tri = tris[t];
        const Vec3 n = cross(tri.b - tri.a, tri.c - tri.a);
        const double scale = std::abs(n.x) + std::abs(n.y) + std::abs(n.z);
        if (!(std::abs(n[a]) > 1e-12 * scale)) continue;  // parallel to the lines
        const double eps = 1e-9 * std::abs(n[a]);
        const IndexRange rb = (s == b) ? intersect(line_b[t], layers) : line_b[t];
        const IndexRange rc = (s == c) ? intersect(line_c[t], layers) : line_c[t];
        for (long jc = rc.lo; jc <= rc.hi; ++jc) {
          const double pc = static_cast<double>(jc) + 0.5;
          for (long jb = rb.lo; jb <= rb.hi; ++jb) {
            const double pb = static_cast<double>(jb) + 0.5;
            auto edge_fn = [&](const Vec3& p, const Vec3& q) {
              return (q[b] - p[b]) * (pc - p[c]) - (q[c] - p[c]) * (pb - p[b]);
            };
            const double w0 = edge_fn(tri.a, tri.b);
            const double w1 = edge_fn(tri.b, tri.c);
            const double w2 = edge_fn(tri.c, tri.a);
            const bool inside = (w0 >= -eps && w1 >= -eps && w2 >= -eps) ||
                                (w0 <= eps && w1 <= eps && w2 <= eps);
            if (!inside) continue;
            const double t_hit =
                tri.a[a] - (n[b] * (pb - tri.a[b]) + n[c] * (pc - tri.a[c])) / n[a];
            if (!(t_hit >= -0.5 - 1e-9 && t_hit <= static_cast<double>(na) + 0.5 + 1e-9)) continue;
            const double r = t_hit + 0.5;
            const long edge = static_cast<long>(std::floor(r));
            const double frac = r - static_cast<double>(edge);
            const auto ub = static_cast<std::size_t>(jb);
            const auto uc = static_cast<std::size_t>(jc);
            block(edge, ub, uc);
            // A crossing at a voxel center blocks both of its edges.
            if (frac < 1e-9) block(edge - 1, ub, uc);
            if (frac > 1.0 - 1e-9) block(edge + 1, ub, uc);
          }
        }
      }
    });
  }
  return bits;
}

// Voxels whose center is reachable from outside the grid without crossing the
// surface.
std::vector<std::uint8_t> lattice_exterior(const std::vector<std::uint8_t>& bits, const Dims& d) {
  std::vector<std::uint8_t> ext(d.count(), 0);
  std::vector<std::uint32_t> stack;
  auto visit = [&](std::size_t idx) {
    if (!ext[idx]) {
      ext[idx] = 1;
      stack.push_back(static_cast<std::uint32_t>(idx));
    }
  };
  for (std::size_t k = 0; k < d.nz; ++k) {
    for (std::size_t j = 0; j < d.ny; ++j) {
      for (std::size_t i = 0; i < d.nx; ++i) {
        const std::array<std::size_t, 3> p{i, j, k};
        const std::size_t idx = i + d.nx * (j + d.ny * k);
        for (int a = 0; a < 3; ++a) {
          if ((p[a] == 0 && !(bits[idx] & (1u << (2 * a)))) ||
              (p[a] + 1 == d[a] && !(bits[idx] & (1u << (2 * a + 1))))) {
            visit(idx);
          }
        }
      }
    }
  }
  const std::size_t stride[3] = {1, d.nx, d.nx * d.ny};
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const auto p = decode(idx, d);
    for (int a = 0; a < 3; ++a) {
      if (p[a] > 0 && !(bits[idx] & (1u << (2 * a)))) visit(idx - stride[a]);
      if (p[a] + 1 < d[a] && !(bits[idx] & (1u << (2 * a + 1)))) visit(idx + stride[a]);
    }
  }
  return ext;
}

VoxelGrid parity_fill(const std::vector<Triangle>& tris, const Dims& dims, const GridTransform& transform,
                      unsigned workers) {
  VoxelGrid out(dims, transform, 0);
  // Jitter keeps column rays off shared edges and vertices so each crossing
  // is counted once.
  constexpr double kJitterX = 1.31e-7;
  constexpr double kJitterY = 2.17e-7;
  std::vector<IndexRange> rows(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    rows[t] = clamp_range(static_cast<long>(std::ceil(axis_min(tris[t], 1) - 0.5 - kJitterY)),
                          static_cast<long>(std::floor(axis_max(tris[t], 1) - 0.5 - kJitterY)), dims.ny);
  }
  const auto buckets = bucket_by_slab(rows, dims.ny);
  parallel_for(buckets.size(), workers, [&](std::size_t slab) {
    const IndexRange layers = slab_layers(slab, dims.ny);
    std::vector<double> hits;
    for (long j = layers.lo; j <= layers.hi; ++j) {
      const double py = static_cast<double>(j) + 0.5 + kJitterY;
      for (std::size_t i = 0; i < dims.nx; ++i) {
        const double px = static_cast<double>(i) + 0.5 + kJitterX;
        hits.clear();
        for (std::uint32_t t : buckets[slab]) {
          const Triangle& tri = tris[t];
          if (px < axis_min(tri, 0) || px > axis_max(tri, 0) || py < axis_min(tri, 1) ||
              py > axis_max(tri, 1)) {
            continue;
          }
          const Vec3 n = cross(tri.b - tri.a, tri.c - tri.a);
          if (n.z == 0.0) continue;
          auto edge_fn = [&](const Vec3& p, const Vec3& q) {
            return (q.x - p.x) * (py - p.y) - (q.y - p.y) * (px - p.x);
          };
          const double w0 = edge_fn(tri.a, tri.b);
          const double w1 = edge_fn(tri.b, tri.c);
          const double w2 = edge_fn(tri.c, tri.a);
          if (!((w0 > 0 && w1 > 0 && w2 > 0) || (w0 < 0 && w1 < 0 && w2 < 0))) continue;
          hits.push_back(tri.a.z - (n.x * (px - tri.a.x) + n.y * (py - tri.a.y)) / n.z);
        }
        std::sort(hits.begin(), hits.end());
        for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
          const long k0 = std::max(0L, static_cast<long>(std::floor(hits[h] - 0.5)) + 1);
          const long k1 = std::min(static_cast<long>(dims.nz) - 1,
                                   static_cast<long>(std::ceil(hits[h + 1] - 0.5)) - 1);
          for (long k = k0; k <= k1; ++k) out(i, static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = 1;
        }
      }
    }
  });
  return out;
}

}  // namespace

GridTransform fit_transform(const Aabb& box, std::size_t res) {
  validate_res(res);
  const double longest = box.longest_extent();
  if (!(longest > 0.0) || !std::isfinite(longest)) {
    throw Error(ErrorKind::kDegenerateGeometry, "geometry has zero extent");
  }
  GridTransform t;
  t.pitch = longest / static_cast<double>(res);
  const Vec3 extent = box.extent();
  for (int a = 0; a < 3; ++a) {
    const double span = extent[a] / t.pitch;
    const auto occupied = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(span - 1e-9)), 1, res);
    const std::size_t low_pad = (res - occupied) / 2;
    t.origin[a] = box.min[a] - static_cast<double>(low_pad) * t.pitch;
  }
  return t;
}

bool triangle_box_overlap(Vec3 box_center, Vec3 h, Vec3 a, Vec3 b, Vec3 c) {
  const Vec3 v0 = a - box_center;
  const Vec3 v1 = b - box_center;
  const Vec3 v2 = c - box_center;
  const Vec3 edges[3] = {v1 - v0, v2 - v1, v0 - v2};
  constexpr Vec3 units[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (const Vec3& e : edges) {
    for (const Vec3& u : units) {
      const Vec3 axis = cross(u, e);
      const double p0 = dot(axis, v0);
      const double p1 = dot(axis, v1);
      const double p2 = dot(axis, v2);
      const double r = h.x * std::abs(axis.x) + h.y * std::abs(axis.y) + h.z * std::abs(axis.z);
      if (std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r) return false;
    }
  }
  for (int q = 0; q < 3; ++q) {
    if (std::min({v0[q], v1[q], v2[q]}) > h[q] || std::max({v0[q], v1[q], v2[q]}) < -h[q]) return false;
  }
  const Vec3 n = cross(edges[0], edges[1]);
  const double d = -dot(n, v0);
  Vec3 vmin, vmax;
  for (int q = 0; q < 3; ++q) {
    vmin[q] = n[q] > 0.0 ? -h[q] : h[q];
    vmax[q] = -vmin[q];
  }
  if (dot(n, vmin) + d > 0.0) return false;
  return dot(n, vmax) + d >= 0.0;
}

VoxelGrid voxelize_surface(const TriangleMesh& mesh, Dims dims, const GridTransform& transform,
                           unsigned workers) {
  VoxelGrid out(dims, transform, 0);
  const auto tris = to_grid_space(mesh, transform);
  std::vector<std::array<IndexRange, 3>> boxes(tris.size());
  std::vector<IndexRange> z_ranges(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int a = 0; a < 3; ++a) {
      // Start one voxel early so a triangle lying on a voxel face marks both sides.
      boxes[t][a] = clamp_range(static_cast<long>(std::floor(axis_min(tris[t], a))) - 1,
                                static_cast<long>(std::floor(axis_max(tris[t], a))), dims[a]);
    }
    const bool empty = boxes[t][0].empty() || boxes[t][1].empty() || boxes[t][2].empty();
    z_ranges[t] = empty ? IndexRange{0, -1} : boxes[t][2];
  }
  const auto buckets = bucket_by_slab(z_ranges, dims.nz);
  const Vec3 half{0.5, 0.5, 0.5};
  parallel_for(buckets.size(), workers, [&](std::size_t slab) {
    const IndexRange layers = slab_layers(slab, dims.nz);
    for (std::uint32_t t : buckets[slab]) {
      const Triangle& tri = tris[t];
      const auto& box = boxes[t];
      const IndexRange rz = intersect(box[2], layers);
      for (long k = rz.lo; k <= rz.hi; ++k) {
        for (long j = box[1].lo; j <= box[1].hi; ++j) {
          for (long i = box[0].lo; i <= box[0].hi; ++i) {
            auto& cell = out(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k));
            if (cell) continue;
            const Vec3 center{static_cast<double>(i) + 0.5, static_cast<double>(j) + 0.5,
                              static_cast<double>(k) + 0.5};
            if (triangle_box_overlap(center, half, tri.a, tri.b, tri.c)) cell = 1;
          }
        }
      }
    }
  });
  return out;
}

VoxelGrid solid_fill(const VoxelGrid& surface) {
  const Dims& d = surface.dims();
  const auto src = surface.values();
  std::vector<std::uint8_t> exterior(d.count(), 0);
  std::vector<std::uint32_t> stack;
  auto visit = [&](std::size_t idx) {
    if (!src[idx] && !exterior[idx]) {
      exterior[idx] = 1;
      stack.push_back(static_cast<std::uint32_t>(idx));
    }
  };
  for (std::size_t k = 0; k < d.nz; ++k) {
    for (std::size_t j = 0; j < d.ny; ++j) {
      for (std::size_t i = 0; i < d.nx; ++i) {
        if (i == 0 || j == 0 || k == 0 || i + 1 == d.nx || j + 1 == d.ny || k + 1 == d.nz) {
          visit(surface.index(i, j, k));
        }
      }
    }
  }
  const std::size_t stride[3] = {1, d.nx, d.nx * d.ny};
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    const auto p = decode(idx, d);
    for (int a = 0; a < 3; ++a) {
      if (p[a] > 0) visit(idx - stride[a]);
      if (p[a] + 1 < d[a]) visit(idx + stride[a]);
    }
  }
  VoxelGrid out(d, surface.transform(), 0);
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = exterior[i] ? 0 : 1;
  return out;
}

VoxelGrid voxelize_mesh_in(const TriangleMesh& mesh, Dims dims, const GridTransform& transform,
                           FillMode fill, unsigned workers) {
  if (mesh.triangles.empty()) throw Error(ErrorKind::kEmptyStructure, "mesh has no faces");
  if (fill == FillMode::kRayParity) {
    return parity_fill(to_grid_space(mesh, transform), dims, transform, workers);
  }

  const VoxelGrid surface = voxelize_surface(mesh, dims, transform, workers);
  VoxelGrid out = solid_fill(surface);
  const auto surf = surface.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (surf[i]) dst[i] = 0;
  }

  const auto bits = blocked_edges(to_grid_space(mesh, transform), dims, workers);
  const auto exterior = lattice_exterior(bits, dims);

  // 26-connected surface components.
  std::vector<std::uint8_t> seen(dims.count(), 0);
  std::vector<std::uint32_t> component;
  std::vector<std::uint32_t> stack;
  for (std::size_t start = 0; start < surf.size(); ++start) {
    if (!surf[start] || seen[start]) continue;
    component.clear();
    seen[start] = 1;
    stack.push_back(static_cast<std::uint32_t>(start));
    bool encloses = false;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      component.push_back(static_cast<std::uint32_t>(idx));
      encloses = encloses || !exterior[idx];
      const auto p = decode(idx, dims);
      for (int dz = -1; dz <= 1; ++dz) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const long x = static_cast<long>(p[0]) + dx;
            const long y = static_cast<long>(p[1]) + dy;
            const long z = static_cast<long>(p[2]) + dz;
            if (x < 0 || y < 0 || z < 0 || x >= static_cast<long>(dims.nx) ||
                y >= static_cast<long>(dims.ny) || z >= static_cast<long>(dims.nz)) {
              continue;
            }
            const std::size_t n = static_cast<std::size_t>(x) +
                                  dims.nx * (static_cast<std::size_t>(y) + dims.ny * static_cast<std::size_t>(z));
            if (surf[n] && !seen[n]) {
              seen[n] = 1;
              stack.push_back(static_cast<std::uint32_t>(n));
            }
          }
        }
      }
    }
    for (std::uint32_t idx : component) {
      if (!encloses || !exterior[idx]) dst[idx] = 1;
    }
  }
  return out;
}

VoxelGrid voxelize_mesh(const TriangleMesh& mesh, const VoxelizeOptions& options) {
  const GridTransform transform = fit_transform(compute_aabb(mesh), options.target_res);
  const std::size_t n = options.target_res;
  return voxelize_mesh_in(mesh, {n, n, n}, transform, options.fill, options.workers);
}

VoxelGrid voxelize_atoms_in(const Molecule& molecule, Dims dims, const GridTransform& transform,
                            unsigned workers) {
  if (molecule.atoms.empty()) throw Error(ErrorKind::kEmptyStructure, "molecule has no atoms");
  VoxelGrid out(dims, transform, 0);
  struct Sphere {
    Vec3 center;
    double radius;
  };
  std::vector<Sphere> spheres;
  std::vector<IndexRange> z_ranges;
  spheres.reserve(molecule.atoms.size());
  for (const auto& atom : molecule.atoms) {
    const Sphere s{transform.to_grid(atom.position), atom.vdw_radius / transform.pitch};
    spheres.push_back(s);
    // Centers k + 1/2 within radius of the sphere center.
    z_ranges.push_back(clamp_range(static_cast<long>(std::floor(s.center.z - s.radius - 0.5)),
                                   static_cast<long>(std::ceil(s.center.z + s.radius - 0.5)), dims.nz));
  }
  const auto buckets = bucket_by_slab(z_ranges, dims.nz);
  parallel_for(buckets.size(), workers, [&](std::size_t slab) {
    const IndexRange layers = slab_layers(slab, dims.nz);
    for (std::uint32_t a : buckets[slab]) {
      const Sphere& s = spheres[a];
      const double r2 = s.radius * s.radius;
      const IndexRange rz = intersect(z_ranges[a], layers);
      const IndexRange ry = clamp_range(static_cast<long>(std::floor(s.center.y - s.radius - 0.5)),
                                        static_cast<long>(std::ceil(s.center.y + s.radius - 0.5)), dims.ny);
      const IndexRange rx = clamp_range(static_cast<long>(std::floor(s.center.x - s.radius - 0.5)),
                                        static_cast<long>(std::ceil(s.center.x + s.radius - 0.5)), dims.nx);
      for (long k = rz.lo; k <= rz.hi; ++k) {
        const double dz = static_cast<double>(k) + 0.5 - s.center.z;
        for (long j = ry.lo; j <= ry.hi; ++j) {
          const double dy = static_cast<double>(j) + 0.5 - s.center.y;
          const double dyz = dy * dy + dz * dz;
          if (dyz > r2) continue;
          for (long i = rx.lo; i <= rx.hi; ++i) {
            const double dx = static_cast<double>(i) + 0.5 - s.center.x;
            if (dx * dx + dyz <= r2) {
              out(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = 1;
            }
          }
        }
      }
    }
  });
  return out;
}

VoxelGrid voxelize_atoms(const Molecule& molecule, const VoxelizeOptions& options) {
  const GridTransform transform = fit_transform(compute_aabb(molecule), options.target_res);
  const std::size_t n = options.target_res;
  return voxelize_atoms_in(molecule, {n, n, n}, transform, options.workers);
}

VoxelGrid voxelize(const Geometry& geometry, const VoxelizeOptions& options) {
  if (const auto* mol = std::get_if<Molecule>(&geometry)) return voxelize_atoms(*mol, options);
  return voxelize_mesh(std::get<TriangleMesh>(geometry), options);
}

VoxelGrid downsample(const VoxelGrid& grid, std::size_t factor) {
  const Dims& d = grid.dims();
  if (factor == 0 || d.nx % factor != 0 || d.ny % factor != 0 || d.nz % factor != 0) {
    throw Error(ErrorKind::kShapeMismatch,
                "grid dims not divisible by downsampling factor " + std::to_string(factor));
  }
  const Dims od{d.nx / factor, d.ny / factor, d.nz / factor};
  GridTransform t = grid.transform();
  t.pitch *= static_cast<double>(factor);
  VoxelGrid out(od, t, 0);
  for (std::size_t k = 0; k < d.nz; ++k) {
    for (std::size_t j = 0; j < d.ny; ++j) {
      for (std::size_t i = 0; i < d.nx; ++i) {
        if (grid(i, j, k)) out(i / factor, j / factor, k / factor) = 1;
      }
    }
  }
  return out;
}

}  // namespace afmvox
