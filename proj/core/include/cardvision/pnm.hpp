#pragma once

#include <filesystem>
#include <iosfwd>

#include "cardvision/image.hpp"

namespace cardvision {

// Binary Netpbm I/O: P5 (gray), P6 (RGB), P4 (bitmap). Max value 255 only.
// Failures throw Error with kind Io (cannot open) or Format (bad content).

GrayImage read_pgm(std::istream& in);
RgbImage read_ppm(std::istream& in);
void write_pgm(std::ostream& out, const GrayImage& img);
void write_ppm(std::ostream& out, const RgbImage& img);

GrayImage read_pgm(const std::filesystem::path& path);
RgbImage read_ppm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

// Masks: accepts P4, or P5 where foreground is any value >= 128. Written as
// P5 with values {0,255}.
BinaryImage read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const BinaryImage& mask);

// Reads any of P4/P5/P6 and returns grayscale (P6 via to_grayscale).
GrayImage read_any_as_gray(const std::filesystem::path& path);

}  // namespace cardvision
