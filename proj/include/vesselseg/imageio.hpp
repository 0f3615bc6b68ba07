#pragma once

#include <filesystem>

#include "vesselseg/types.hpp"

namespace vseg {

/// Decodes an 8-bit RGB or grayscale PNG. Grayscale is replicated to three
/// channels; alpha is stripped. Palette and 16-bit files are rejected.
RgbImage load_png(const std::filesystem::path& path);

/// Decodes a PNG as a mask: pixel is true iff luminance > 127.
BinaryMask load_mask_png(const std::filesystem::path& path);

/// Writes a mask as 8-bit grayscale with values {0, 255}.
void save_mask_png(const BinaryMask& mask, const std::filesystem::path& path);

/// Writes a gray image as 8-bit grayscale, round(255 * x).
void save_gray_png(const GrayImage& img, const std::filesystem::path& path);

/// Writes a gray image as 16-bit grayscale, round(65535 * x). Used for
/// probability maps and preprocessed images where 8 bits would quantize.
void save_gray16_png(const GrayImage& img, const std::filesystem::path& path);

/// Reads an 8- or 16-bit grayscale PNG into [0,1] floats.
GrayImage load_gray_png(const std::filesystem::path& path);

enum class Channel { Red = 0, Green = 1, Blue = 2 };

/// Selects one channel and scales it by 1/255 into [0,1].
GrayImage extract_channel(const RgbImage& img, Channel channel);

}  // namespace vseg
