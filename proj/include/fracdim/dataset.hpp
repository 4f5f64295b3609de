#pragma once

#include "fracdim/raster.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fracdim {

// One generated image: class label, noise level 0-4 (0 = clean), the seed the
// noise stage consumed, and the image path relative to the manifest location.
struct SampleRecord {
  char label = 0;
  int level = 0;
  std::uint64_t seed = 0;
  std::string path;
};

struct DatasetManifest {
  int image_size = 0;
  int samples_per_cell = 0;
  std::vector<char> classes;
  std::vector<SampleRecord> samples;
  std::filesystem::path root;  // directory the relative paths resolve against
};

struct DatasetConfig {
  std::string classes = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  int image_size = 128;
  int samples_per_cell = 10;
  std::uint64_t base_seed = 1;
};

// Fixed 5x7 bitmap of an uppercase letter, nearest-neighbor upscaled into a
// size x size canvas with a 10% margin. Deterministic; every glyph is
// 4-connected.
BinaryShape glyph(char letter, int size);

// Pixels on the 4-neighborhood boundary between foreground and background.
// Off-canvas neighbors count as background.
PixelGrid boundary_mask(const BinaryShape& shape);

// Flips each boundary pixel independently with probability p (row-major
// order, seeded). Exposed separately so the Bernoulli stage can be tested
// without the component cleanup.
BinaryShape flip_boundary(const BinaryShape& shape, double p, std::uint64_t seed);

// Largest 4-connected foreground component (row-major first wins ties).
BinaryShape largest_component(const BinaryShape& shape);

// Boundary flip probability for a noise level in 1..4.
double noise_probability(int level);

// Boundary Bernoulli noise followed by largest-component cleanup. Errors if
// the noise leaves no foreground; retrying with a new seed is the caller's
// policy.
BinaryShape add_boundary_noise(const BinaryShape& shape, int level, std::uint64_t seed);

// Deterministic per-sample seed derivation.
std::uint64_t sample_seed(std::uint64_t base_seed, char label, int level, int index,
                          int attempt = 0);

// Writes the PBM tree plus manifest.txt under out_dir. Bit-identical output
// for identical (config, base_seed).
DatasetManifest generate(const DatasetConfig& config, const std::filesystem::path& out_dir);

DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

}  // namespace fracdim
