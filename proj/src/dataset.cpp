#include "fracdim/dataset.hpp"

#include "fracdim/errors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace fracdim {
namespace {

// 5x7 uppercase bitmaps. Strokes always meet orthogonally so that every glyph
// stays 4-connected under nearest-neighbor upscaling.
constexpr std::array<std::array<const char*, 7>, 26> kFont = {{
    /* A */ {"11111", "10001", "10001", "11111", "10001", "10001", "10001"},
    /* B */ {"11111", "10001", "10001", "11111", "10001", "10001", "11111"},
    /* C */ {"11111", "10000", "10000", "10000", "10000", "10000", "11111"},
    /* D */ {"11110", "10011", "10001", "10001", "10001", "10011", "11110"},
    /* E */ {"11111", "10000", "10000", "11110", "10000", "10000", "11111"},
    /* F */ {"11111", "10000", "10000", "11110", "10000", "10000", "10000"},
    /* G */ {"11111", "10000", "10000", "10111", "10001", "10001", "11111"},
    /* H */ {"10001", "10001", "10001", "11111", "10001", "10001", "10001"},
    /* I */ {"00100", "00100", "00100", "00100", "00100", "00100", "00100"},
    /* J */ {"00001", "00001", "00001", "00001", "00001", "10001", "11111"},
    /* K */ {"10001", "10011", "10110", "11100", "10110", "10011", "10001"},
    /* L */ {"10000", "10000", "10000", "10000", "10000", "10000", "11111"},
    /* M */ {"10001", "11011", "11111", "10101", "10001", "10001", "10001"},
    /* N */ {"10001", "11001", "11101", "10111", "10011", "10011", "10001"},
    /* O */ {"11111", "10001", "10001", "10001", "10001", "10001", "11111"},
    /* P */ {"11111", "10001", "10001", "11111", "10000", "10000", "10000"},
    /* Q */ {"11111", "10001", "10001", "10001", "10001", "10011", "11111"},
    /* R */ {"11111", "10001", "10001", "11111", "10110", "10011", "10001"},
    /* S */ {"11111", "10000", "10000", "11111", "00001", "00001", "11111"},
    /* T */ {"11111", "00100", "00100", "00100", "00100", "00100", "00100"},
    /* U */ {"10001", "10001", "10001", "10001", "10001", "10001", "11111"},
    /* V */ {"10001", "10001", "10001", "10001", "11011", "01110", "00100"},
    /* W */ {"10001", "10001", "10001", "10101", "11111", "11011", "10001"},
    /* X */ {"10001", "11011", "01110", "00100", "01110", "11011", "10001"},
    /* Y */ {"10001", "11011", "01110", "00100", "00100", "00100", "00100"},
    /* Z */ {"11111", "00011", "00110", "00100", "01100", "11000", "11111"},
}};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string sample_filename(char label, int level, int index) {
  std::ostringstream os;
  os << label << "_L" << level << '_';
  if (index < 10) os << '0';
  os << index << ".pbm";
  return os.str();
}

}  // namespace

BinaryShape glyph(char letter, int size) {
  if (letter < 'A' || letter > 'Z')
    throw DomainError(std::string("glyph: unsupported character '") + letter + "'");
  if (size < 32) throw DomainError("glyph: size must be >= 32");

  const auto& bitmap = kFont[static_cast<std::size_t>(letter - 'A')];
  const int margin = size / 10;
  const int inner = size - 2 * margin;

  BinaryShape shape = make_shape(size, size);
  for (int y = 0; y < inner; ++y) {
    const int row = y * 7 / inner;
    for (int x = 0; x < inner; ++x) {
      const int col = x * 5 / inner;
      if (bitmap[static_cast<std::size_t>(row)][col] == '1')
        shape.pixels(margin + y, margin + x) = true;
    }
  }
  return shape;
}

PixelGrid boundary_mask(const BinaryShape& shape) {
  const Eigen::Index w = shape.width();
  const Eigen::Index h = shape.height();
  PixelGrid mask = PixelGrid::Constant(h, w, false);
  const auto fg = [&](Eigen::Index y, Eigen::Index x) {
    return y >= 0 && y < h && x >= 0 && x < w && shape.pixels(y, x);
  };
  // Off-canvas neighbors read as background via fg(), so a border foreground
  // pixel is boundary while a border background pixel is not (on that side).
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const bool self = shape.pixels(y, x);
      mask(y, x) = fg(y - 1, x) != self || fg(y + 1, x) != self ||
                   fg(y, x - 1) != self || fg(y, x + 1) != self;
    }
  }
  return mask;
}

BinaryShape flip_boundary(const BinaryShape& shape, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("flip_boundary: p must be in [0, 1]");
  const PixelGrid mask = boundary_mask(shape);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  BinaryShape out = shape;
  for (Eigen::Index y = 0; y < shape.height(); ++y)
    for (Eigen::Index x = 0; x < shape.width(); ++x)
      if (mask(y, x) && uniform(rng) < p) out.pixels(y, x) = !out.pixels(y, x);
  return out;
}

BinaryShape largest_component(const BinaryShape& shape) {
  const Eigen::Index w = shape.width();
  const Eigen::Index h = shape.height();
  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> label =
      Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(h, w, -1);

  int best_label = -1;
  std::int64_t best_size = 0;
  int next = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index sy = 0; sy < h; ++sy) {
    for (Eigen::Index sx = 0; sx < w; ++sx) {
      if (!shape.pixels(sy, sx) || label(sy, sx) >= 0) continue;
      const int id = next++;
      std::int64_t size = 0;
      stack.assign(1, {sy, sx});
      label(sy, sx) = id;
      while (!stack.empty()) {
        const auto [y, x] = stack.back();
        stack.pop_back();
        ++size;
        const std::pair<Eigen::Index, Eigen::Index> nbr[4] = {
            {y - 1, x}, {y + 1, x}, {y, x - 1}, {y, x + 1}};
        for (const auto& [ny, nx] : nbr) {
          if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
          if (!shape.pixels(ny, nx) || label(ny, nx) >= 0) continue;
          label(ny, nx) = id;
          stack.push_back({ny, nx});
        }
      }
      if (size > best_size) {  // earliest component wins ties
        best_size = size;
        best_label = id;
      }
    }
  }

  BinaryShape out = make_shape(w, h);
  if (best_label >= 0) out.pixels = (label == best_label);
  return out;
}

double noise_probability(int level) {
  switch (level) {
    case 1: return 0.05;
    case 2: return 0.10;
    case 3: return 0.20;
    case 4: return 0.30;
    default: throw DomainError("noise level must be in 1..4");
  }
}

BinaryShape add_boundary_noise(const BinaryShape& shape, int level, std::uint64_t seed) {
  const double p = noise_probability(level);
  const BinaryShape flipped = flip_boundary(shape, p, seed);
  if (flipped.foreground_count() == 0)
    throw DomainError("add_boundary_noise: noise destroyed shape");
  return largest_component(flipped);
}

std::uint64_t sample_seed(std::uint64_t base_seed, char label, int level, int index,
                          int attempt) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(label));
  h = splitmix64(h ^ static_cast<std::uint64_t>(level));
  h = splitmix64(h ^ static_cast<std::uint64_t>(index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(attempt));
  return h;
}

DatasetManifest generate(const DatasetConfig& config, const std::filesystem::path& out_dir) {
  if (config.samples_per_cell < 4)
    throw DomainError("generate: samples_per_cell must be >= 4");
  if (config.classes.empty()) throw DomainError("generate: no classes");
  for (char c : config.classes)
    if (c < 'A' || c > 'Z')
      throw DomainError(std::string("generate: unsupported class '") + c + "'");

  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec)
    throw IoError("cannot create output directory " + (out_dir / "images").string() +
                  ": " + ec.message());

  DatasetManifest manifest;
  manifest.image_size = config.image_size;
  manifest.samples_per_cell = config.samples_per_cell;
  manifest.root = out_dir;

  for (char label : config.classes) {
    manifest.classes.push_back(label);
    const BinaryShape clean = glyph(label, config.image_size);
    for (int level = 0; level <= 4; ++level) {
      for (int index = 0; index < config.samples_per_cell; ++index) {
        SampleRecord rec;
        rec.label = label;
        rec.level = level;
        rec.path = "images/" + sample_filename(label, level, index);

        BinaryShape image;
        if (level == 0) {
          rec.seed = 0;  // clean glyphs are seed-independent
          image = clean;
        } else {
          int attempt = 0;
          for (;; ++attempt) {
            rec.seed = sample_seed(config.base_seed, label, level, index, attempt);
            try {
              image = add_boundary_noise(clean, level, rec.seed);
              break;
            } catch (const DomainError&) {
              if (attempt >= 9) throw;
            }
          }
        }
        save_pbm(image, out_dir / rec.path);
        manifest.samples.push_back(std::move(rec));
      }
    }
  }

  save_manifest(manifest, out_dir / "manifest.txt");
  return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file << "# fracdim dataset manifest: label level seed path\n";
  file << "meta " << manifest.image_size << ' ' << manifest.samples_per_cell << '\n';
  for (const SampleRecord& rec : manifest.samples)
    file << rec.label << ' ' << rec.level << ' ' << rec.seed << ' ' << rec.path << '\n';
  if (!file) throw IoError("write failure on " + path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());

  DatasetManifest manifest;
  manifest.root = path.parent_path();

  std::string line;
  std::size_t line_no = 0;
  bool have_meta = false;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    if (!have_meta) {
      std::string tag;
      if (!(in >> tag >> manifest.image_size >> manifest.samples_per_cell) || tag != "meta")
        throw IoError(path.string() + ": malformed meta line " + std::to_string(line_no));
      have_meta = true;
      continue;
    }
    SampleRecord rec;
    if (!(in >> rec.label >> rec.level >> rec.seed >> rec.path))
      throw IoError(path.string() + ": malformed record at line " + std::to_string(line_no));
    if (std::find(manifest.classes.begin(), manifest.classes.end(), rec.label) ==
        manifest.classes.end())
      manifest.classes.push_back(rec.label);
    manifest.samples.push_back(std::move(rec));
  }
  if (!have_meta) throw IoError(path.string() + ": missing meta line");

  // Every (label, level) cell must hold exactly samples_per_cell records.
  for (char label : manifest.classes) {
    for (int level = 0; level <= 4; ++level) {
      long count = 0;
      for (const SampleRecord& rec : manifest.samples)
        count += (rec.label == label && rec.level == level);
      if (count != manifest.samples_per_cell)
        throw IoError(path.string() + ": cell " + label + "/L" + std::to_string(level) +
                      " has " + std::to_string(count) + " records, expected " +
                      std::to_string(manifest.samples_per_cell));
    }
  }
  return manifest;
}

}  // namespace fracdim
