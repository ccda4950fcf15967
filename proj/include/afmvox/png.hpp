//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <vector>

#include "afmvox/renderer.hpp"

namespace afmvox {

/// Encodes an 8-bit RGB PNG (color type 2, no alpha, no interlace). The byte
/// stream depends only on the pixels.
std::vector<std::uint8_t> encode_png(const RgbImage& img);

}  // namespace afmvox
