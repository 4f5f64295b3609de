#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fracdim {

// Row-major boolean grid; element (y, x) is row y, column x.
using PixelGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// 2-D binary raster. Foreground (true) is the shape under analysis; it maps
// to PBM black ("1") on disk.
struct BinaryShape {
  PixelGrid pixels;

  Eigen::Index width() const { return pixels.cols(); }
  Eigen::Index height() const { return pixels.rows(); }
  Eigen::Index foreground_count() const { return pixels.count(); }

  bool operator==(const BinaryShape& other) const {
    return width() == other.width() && height() == other.height() &&
           (pixels == other.pixels).all();
  }
};

// All-background canvas. width and height must be >= 1.
BinaryShape make_shape(Eigen::Index width, Eigen::Index height);

// Parses a P1 (ASCII) or P4 (packed binary) PBM image. `origin` names the
// source in error messages. Parse errors report the offending byte offset.
BinaryShape decode_pbm(const std::string& bytes, const std::string& origin);

// Serializes to P4: header "P4\n<w> <h>\n", rows packed MSB-first and padded
// to a byte boundary.
std::vector<std::uint8_t> encode_pbm(const BinaryShape& shape);

BinaryShape load_pbm(const std::filesystem::path& path);
void save_pbm(const BinaryShape& shape, const std::filesystem::path& path);

// Canvas grown by `margin` background pixels on every side; the foreground is
// translated by (margin, margin). margin 0 is the identity.
BinaryShape pad(const BinaryShape& shape, int margin);

}  // namespace fracdim
