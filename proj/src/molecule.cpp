//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/molecule.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "afmvox/error.hpp"

namespace afmvox {
namespace {

struct RadiusEntry {
  std::string_view element;
  double radius;
};

// Bondi radii, angstrom.
constexpr RadiusEntry kRadii[] = {
    {"H", 1.20}, {"C", 1.70}, {"N", 1.55}, {"O", 1.52}, {"S", 1.80}, {"P", 1.80},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Fixed-column slice, clipped to the line length (PDB lines are often
// right-trimmed).
std::string_view column(std::string_view line, std::size_t start, std::size_t len) {
  if (start >= line.size()) return {};
  return line.substr(start, std::min(len, line.size() - start));
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_int(std::string_view text, long long& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool all_alpha(std::string_view s) {
  for (char c : s)
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

// Element from the atom-name field (columns 13-16). Two-letter elements are
// left-justified into column 13; one-letter elements start in column 14.
std::string element_from_name(std::string_view name) {
  if (name.empty()) return {};
  if (std::isalpha(static_cast<unsigned char>(name.front()))) {
    std::size_t n = 0;
    while (n < name.size() && n < 2 && std::isalpha(static_cast<unsigned char>(name[n]))) ++n;
    return upper(name.substr(0, n));
  }
  for (char c : name)
    if (std::isalpha(static_cast<unsigned char>(c))) return upper(std::string_view(&c, 1));
  return {};
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

double vdw_radius(std::string_view element) {
  for (const auto& e : kRadii)
    if (e.element == element) return e.radius;
  return kDefaultVdwRadius;
}

bool is_known_element(std::string_view element) {
  for (const auto& e : kRadii)
    if (e.element == element) return true;
  return false;
}

Molecule parse_pdb(std::string_view text, std::string id, std::vector<std::string>* warnings) {
  Molecule mol;
  mol.id = std::move(id);
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    const std::string_view record = column(line, 0, 6);
    if (record.starts_with("ENDMDL")) break;
    const bool is_atom = record == "ATOM  " || record == "ATOM" || record == "HETATM";
    if (!is_atom) continue;

    const std::string_view alt_loc = column(line, 16, 1);
    if (!alt_loc.empty() && alt_loc != " " && alt_loc != "A") continue;
    if (trim(column(line, 17, 3)) == "HOH") continue;

    AtomRecord atom;
    long long serial = 0;
    atom.serial = parse_int(column(line, 6, 5), serial)
                      ? static_cast<int>(serial)
                      : static_cast<int>(mol.atoms.size() + 1);

    if (!parse_double(column(line, 30, 8), atom.position.x) ||
        !parse_double(column(line, 38, 8), atom.position.y) ||
        !parse_double(column(line, 46, 8), atom.position.z)) {
      throw Error(ErrorKind::kMalformedRecord, "unparsable coordinate field", line_no);
    }

    std::string_view element = trim(column(line, 76, 2));
    atom.element = all_alpha(element) ? upper(element) : element_from_name(column(line, 12, 4));
    if (atom.element.empty()) {
      throw Error(ErrorKind::kMalformedRecord, "cannot determine element", line_no);
    }
    if (!is_known_element(atom.element) && warnings != nullptr) {
      warnings->push_back("line " + std::to_string(line_no) + ": unknown element '" +
                          atom.element + "', using default radius");
    }
    atom.vdw_radius = vdw_radius(atom.element);
    mol.atoms.push_back(std::move(atom));
  }
  if (mol.atoms.empty()) {
    throw Error(ErrorKind::kEmptyStructure, "no ATOM/HETATM records");
  }
  return mol;
}

TriangleMesh parse_obj(std::string_view text) {
  TriangleMesh mesh;
  const auto lines = split_lines(text);
  std::vector<std::uint32_t> polygon;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      Vec3 v;
      if (tokens.size() < 4 || !parse_double(tokens[1], v.x) || !parse_double(tokens[2], v.y) ||
          !parse_double(tokens[3], v.z)) {
        throw Error(ErrorKind::kMalformedRecord, "bad vertex", line_no);
      }
      mesh.vertices.push_back(v);
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        throw Error(ErrorKind::kMalformedRecord, "face needs at least 3 vertices", line_no);
      }
      polygon.clear();
      const auto count = static_cast<long long>(mesh.vertices.size());
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const std::string_view ref = tokens[t].substr(0, tokens[t].find('/'));
        long long index = 0;
        if (!parse_int(ref, index) || index == 0) {
          throw Error(ErrorKind::kMalformedRecord, "bad face index", line_no);
        }
        const long long resolved = index < 0 ? count + index : index - 1;
        if (resolved < 0 || resolved >= count) {
          throw Error(ErrorKind::kMalformedRecord, "face index out of range", line_no);
        }
        polygon.push_back(static_cast<std::uint32_t>(resolved));
      }
      for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
        const std::array<std::uint32_t, 3> tri{polygon[0], polygon[k], polygon[k + 1]};
        if (tri[0] == tri[1] && tri[1] == tri[2]) continue;
        mesh.triangles.push_back(tri);
      }
    }
  }
  if (mesh.triangles.empty()) {
    throw Error(ErrorKind::kEmptyStructure, "no faces");
  }
  return mesh;
}

std::string write_obj(const TriangleMesh& mesh) {
  std::string out;
  for (const Vec3& v : mesh.vertices) {
    out += "v ";
    append_number(out, v.x);
    out += ' ';
    append_number(out, v.y);
    out += ' ';
    append_number(out, v.z);
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' +
           std::to_string(t[2] + 1) + '\n';
  }
  return out;
}

Aabb compute_aabb(const Molecule& molecule) {
  if (molecule.atoms.empty()) throw Error(ErrorKind::kEmptyStructure, "molecule has no atoms");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Aabb box{{inf, inf, inf}, {-inf, -inf, -inf}};
  for (const auto& atom : molecule.atoms) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], atom.position[a] - atom.vdw_radius);
      box.max[a] = std::max(box.max[a], atom.position[a] + atom.vdw_radius);
    }
  }
  return box;
}

Aabb compute_aabb(const TriangleMesh& mesh) {
  if (mesh.vertices.empty() || mesh.triangles.empty()) {
    throw Error(ErrorKind::kEmptyStructure, "mesh has no faces");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  Aabb box{{inf, inf, inf}, {-inf, -inf, -inf}};
  for (const Vec3& v : mesh.vertices) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], v[a]);
      box.max[a] = std::max(box.max[a], v[a]);
    }
  }
  return box;
}

Aabb compute_aabb(const Geometry& geometry) {
  return std::visit([](const auto& g) { return compute_aabb(g); }, geometry);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Geometry load_structure(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const std::string text = read_text_file(path);
  if (ext == ".obj") return parse_obj(text);
  if (ext == ".pdb" || ext == ".ent") return parse_pdb(text, path.stem().string(), warnings);
  throw Error(ErrorKind::kInvalidConfig, "unsupported structure extension: " + path.string());
}

}  // namespace afmvox
