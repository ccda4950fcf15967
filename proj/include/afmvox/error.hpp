//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afmvox {

enum class ErrorKind {
  kEmptyStructure,
  kMalformedRecord,
  kDegenerateGeometry,
  kShapeMismatch,
  kInvalidConfig,
  kInsufficientData,
  kManifestError,
  kFormatError,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library is an Error. `line` is 1-based and set
// for text-format errors; `offset` is a byte offset for binary-format errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> offset_;
};

}  // namespace afmvox
