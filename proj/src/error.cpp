//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "afmvox/error.hpp"

namespace afmvox {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyStructure: return "EmptyStructure";
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kManifestError: return "ManifestError";
    case ErrorKind::kFormatError: return "FormatError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> line,
                     std::optional<std::size_t> offset) {
  std::string out(to_string(kind));
  if (line) out += " (line " + std::to_string(*line) + ")";
  if (offset) out += " (byte offset " + std::to_string(*offset) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> line, std::optional<std::size_t> offset)
    : std::runtime_error(decorate(kind, message, line, offset)),
      kind_(kind),
      line_(line),
      offset_(offset) {}

}  // namespace afmvox
