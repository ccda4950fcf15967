//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "afmvox/error.hpp"
#include "afmvox/png.hpp"
#include "png_decode.hpp"

namespace afmvox {
namespace {

RgbImage decode_with_libpng(const std::vector<std::uint8_t>& bytes, int* color_type = nullptr,
                            int* bit_depth = nullptr) {
  // Header fields straight from IHDR.
  if (color_type) *color_type = bytes[25];
  if (bit_depth) *bit_depth = bytes[24];
  return testing::decode_png(bytes);
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) | b[at + 3];
}

TEST(EncodePng, OnePixelBlack) {
  const RgbImage img(1, 1);
  const auto bytes = encode_png(img);
  const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  ASSERT_GE(bytes.size(), 8u);
  EXPECT_EQ(std::memcmp(bytes.data(), signature, 8), 0);
  EXPECT_EQ(decode_with_libpng(bytes), img);
}

TEST(EncodePng, HeaderContract) {
  const auto bytes = encode_png(RgbImage(224, 224));
  EXPECT_EQ(std::string(bytes.begin() + 12, bytes.begin() + 16), "IHDR");
  EXPECT_EQ(be32(bytes, 16), 224u);
  EXPECT_EQ(be32(bytes, 20), 224u);
  int color_type = -1, depth = -1;
  decode_with_libpng(bytes, &color_type, &depth);
  EXPECT_EQ(color_type, 2);
  EXPECT_EQ(depth, 8);
  EXPECT_EQ(std::string(bytes.end() - 8, bytes.end() - 4), "IEND");
}

TEST(EncodePng, RandomImagesRoundTrip) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> side(1, 97);
  for (int trial = 0; trial < 20; ++trial) {
    RgbImage img(side(rng), side(rng));
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(byte(rng));
    EXPECT_EQ(decode_with_libpng(encode_png(img)), img) << trial;
  }
}

TEST(EncodePng, Deterministic) {
  RgbImage img(17, 9);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 7);
  EXPECT_EQ(encode_png(img), encode_png(img));
}

TEST(EncodePng, BufferMismatchThrows) {
  RgbImage img(4, 4);
  img.pixels.pop_back();
  EXPECT_THROW(encode_png(img), Error);
  EXPECT_THROW(encode_png(RgbImage(0, 3)), Error);
}

}  // namespace
}  // namespace afmvox
