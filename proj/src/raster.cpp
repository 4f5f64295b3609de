#include "fracdim/raster.hpp"

#include "fracdim/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fracdim {
namespace {

constexpr Eigen::Index kMaxPixels = 1 << 28;

class PbmReader {
 public:
  PbmReader(const std::string& bytes, const std::string& origin)
      : bytes_(bytes), origin_(origin) {}

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream os;
    os << origin_ << ": " << message << " at byte " << pos_;
    throw IoError(os.str());
  }

  bool eof() const { return pos_ >= bytes_.size(); }
  unsigned char peek() const { return static_cast<unsigned char>(bytes_[pos_]); }
  unsigned char take() { return static_cast<unsigned char>(bytes_[pos_++]); }
  std::size_t pos() const { return pos_; }

  // Whitespace and '#' comments are interchangeable separators in PBM headers
  // and in P1 rasters.
  void skip_separators() {
    while (!eof()) {
      unsigned char c = peek();
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!eof() && take() != '\n') {
        }
      } else {
        break;
      }
    }
  }

  Eigen::Index read_dimension(const char* name) {
    skip_separators();
    if (eof() || !std::isdigit(peek())) fail(std::string("missing ") + name);
    long long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (take() - '0');
      if (value > kMaxPixels) fail(std::string(name) + " too large");
    }
    if (value == 0) fail(std::string("zero ") + name);
    return static_cast<Eigen::Index>(value);
  }

 private:
  const std::string& bytes_;
  std::string origin_;
  std::size_t pos_ = 0;
};

}  // namespace

BinaryShape make_shape(Eigen::Index width, Eigen::Index height) {
  if (width < 1 || height < 1) throw DomainError("shape dimensions must be >= 1");
  BinaryShape shape;
  shape.pixels = PixelGrid::Constant(height, width, false);
  return shape;
}

BinaryShape decode_pbm(const std::string& bytes, const std::string& origin) {
  PbmReader in(bytes, origin);
  if (bytes.size() < 2 || bytes[0] != 'P') in.fail("not a PBM file (expected P1 or P4)");
  char kind = bytes[1];
  if (kind != '1' && kind != '4') in.fail("not a PBM file (expected P1 or P4)");
  in.take();
  in.take();

  Eigen::Index width = in.read_dimension("width");
  Eigen::Index height = in.read_dimension("height");
  if (width * height > kMaxPixels) in.fail("image too large");

  BinaryShape shape = make_shape(width, height);
  if (kind == '1') {
    for (Eigen::Index y = 0; y < height; ++y) {
      for (Eigen::Index x = 0; x < width; ++x) {
        in.skip_separators();
        if (in.eof()) in.fail("truncated P1 raster");
        unsigned char c = in.take();
        if (c != '0' && c != '1') in.fail("invalid P1 raster character");
        shape.pixels(y, x) = (c == '1');
      }
    }
  } else {
    // Exactly one whitespace byte separates the header from the raster.
    if (in.eof() || !std::isspace(in.peek())) in.fail("missing raster separator");
    in.take();
    const Eigen::Index stride = (width + 7) / 8;
    if (bytes.size() - in.pos() < static_cast<std::size_t>(stride * height))
      in.fail("truncated P4 raster");
    for (Eigen::Index y = 0; y < height; ++y) {
      for (Eigen::Index xb = 0; xb < stride; ++xb) {
        unsigned char b = in.take();
        for (int bit = 0; bit < 8; ++bit) {
          Eigen::Index x = xb * 8 + bit;
          if (x < width) shape.pixels(y, x) = (b >> (7 - bit)) & 1;
        }
      }
    }
  }
  return shape;
}

std::vector<std::uint8_t> encode_pbm(const BinaryShape& shape) {
  std::ostringstream header;
  header << "P4\n" << shape.width() << ' ' << shape.height() << '\n';
  const std::string h = header.str();

  const Eigen::Index stride = (shape.width() + 7) / 8;
  std::vector<std::uint8_t> out(h.begin(), h.end());
  out.reserve(out.size() + static_cast<std::size_t>(stride * shape.height()));
  for (Eigen::Index y = 0; y < shape.height(); ++y) {
    for (Eigen::Index xb = 0; xb < stride; ++xb) {
      std::uint8_t b = 0;
      for (int bit = 0; bit < 8; ++bit) {
        Eigen::Index x = xb * 8 + bit;
        if (x < shape.width() && shape.pixels(y, x)) b |= 1 << (7 - bit);
      }
      out.push_back(b);
    }
  }
  return out;
}

BinaryShape load_pbm(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  if (!file) throw IoError("read failure on " + path.string());
  return decode_pbm(buf.str(), path.string());
}

void save_pbm(const BinaryShape& shape, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_pbm(shape);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) throw IoError("write failure on " + path.string());
}

BinaryShape pad(const BinaryShape& shape, int margin) {
  if (margin < 0) throw DomainError("pad margin must be >= 0");
  if (margin == 0) return shape;
  BinaryShape out = make_shape(shape.width() + 2 * margin, shape.height() + 2 * margin);
  out.pixels.block(margin, margin, shape.height(), shape.width()) = shape.pixels;
  return out;
}

}  // namespace fracdim
