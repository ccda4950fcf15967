//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "afmvox/geometry.hpp"

namespace afmvox {

struct AtomRecord {
  int serial = 0;
  std::string element;  // upper case, 1-2 characters
  Vec3 position;        // angstrom
  double vdw_radius = 0.0;

  friend bool operator==(const AtomRecord&, const AtomRecord&) = default;
};

struct Molecule {
  std::string id;
  std::vector<AtomRecord> atoms;

  friend bool operator==(const Molecule&, const Molecule&) = default;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  friend bool operator==(const TriangleMesh&, const TriangleMesh&) = default;
};

using Geometry = std::variant<Molecule, TriangleMesh>;

/// Van der Waals radius in angstrom for an upper-case element symbol.
/// Unknown elements map to kDefaultVdwRadius.
double vdw_radius(std::string_view element);
bool is_known_element(std::string_view element);
inline constexpr double kDefaultVdwRadius = 1.70;

/// Parses ATOM/HETATM records of a wwPDB fixed-column file.
///
/// Waters (HOH) are dropped, only blank or 'A' alternate locations are kept,
/// and parsing stops at the first ENDMDL. Elements missing from columns 77-78
/// are recovered from the atom name. Atoms with elements outside the radius
/// table receive the default radius; one message per atom is appended to
/// `warnings` when it is non-null.
///
/// Throws Error(kEmptyStructure) when no atoms remain and
/// Error(kMalformedRecord) with the 1-based line number when a coordinate
/// field does not parse.
Molecule parse_pdb(std::string_view text, std::string id = {},
                   std::vector<std::string>* warnings = nullptr);

/// Parses `v` and `f` directives of a Wavefront OBJ file. Polygons are fan
/// triangulated from their first vertex, negative indices are resolved against
/// the vertices read so far, and faces collapsing to a single vertex are
/// dropped.
TriangleMesh parse_obj(std::string_view text);

/// Writes vertices with round-trip precision and 1-based triangle faces.
std::string write_obj(const TriangleMesh& mesh);

Aabb compute_aabb(const Molecule& molecule);
Aabb compute_aabb(const TriangleMesh& mesh);
Aabb compute_aabb(const Geometry& geometry);

std::string read_text_file(const std::filesystem::path& path);

/// Loads a .pdb/.ent or .obj file, choosing the parser by extension. The
/// molecule id is the file stem.
Geometry load_structure(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace afmvox
