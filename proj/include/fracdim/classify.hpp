#pragma once

#include "fracdim/dataset.hpp"
#include "fracdim/mfd.hpp"
#include "fracdim/spectral.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracdim {

enum class SignatureKind { kMfd, kDescriptors, kFd };

std::string to_string(SignatureKind kind);
SignatureKind signature_kind_from_string(const std::string& name);

// Everything needed to turn a shape into a comparable feature vector. All
// samples in one experiment must share these parameters; distances between
// signatures of different parameterizations are meaningless.
struct SignatureParams {
  SignatureKind kind = SignatureKind::kMfd;
  int r_max = kDefaultRMax;
  double sigma = kDefaultSigma;
  int n = kDefaultSamples;
  int r_min = kDefaultRMin;
  int k = kDefaultDescriptors;  // descriptor count, kind == kDescriptors only

  Eigen::Index dimension() const;
};

// MFD sample vector, descriptor vector, or 1-vector holding the scalar FD.
Eigen::ArrayXd compute_signature(const BinaryShape& shape, const SignatureParams& params);

// Per-class mean signature.
struct ClassModel {
  char label = 0;
  Eigen::ArrayXd centroid;
};

// counts(i, j): samples of true class labels[i] predicted as labels[j].
struct ConfusionMatrix {
  std::vector<char> labels;
  Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> counts;

  std::int64_t total() const { return counts.sum(); }
  std::int64_t correct() const;
  double success_rate() const;
};

// Indices into manifest.samples, disjoint: per (class, level) cell exactly
// per_level_train go to training, the rest to test (seeded choice).
struct SplitResult {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

SplitResult split_train_test(const DatasetManifest& manifest, int per_level_train,
                             std::uint64_t seed);

// Mean signature per class over the training shapes; signatures computed via
// compute_signature. Models come back sorted by label.
std::vector<ClassModel> build_models(const std::vector<char>& labels,
                                     const std::vector<const BinaryShape*>& shapes,
                                     const SignatureParams& params, int jobs = 1);

// Centroids from precomputed signatures (fixed accumulation order).
std::vector<ClassModel> models_from_signatures(const std::vector<char>& labels,
                                               const std::vector<Eigen::ArrayXd>& signatures);

// Label of the nearest centroid in Euclidean distance; ties break to the
// lexicographically smaller label.
char classify_sample(const Eigen::ArrayXd& signature, const std::vector<ClassModel>& models);

struct ExperimentConfig {
  std::vector<int> r_values{kDefaultRMax};
  std::vector<double> sigma_values{kDefaultSigma};
  SignatureKind kind = SignatureKind::kMfd;
  int descriptor_count = kDefaultDescriptors;
  int n = kDefaultSamples;
  int r_min = kDefaultRMin;
  int per_level_train = 3;
  std::uint64_t split_seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
};

struct LevelStats {
  std::int64_t total = 0;
  std::int64_t correct = 0;

  double rate() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct ConfigReport {
  int r_max = 0;
  double sigma = 0.0;
  ConfusionMatrix confusion;
  double success_rate = 0.0;
  std::map<int, LevelStats> per_level;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<char> classes;
  std::vector<ConfigReport> configs;
};

// One pass per (r, sigma): split, train centroids, classify the held-out
// samples, tally confusion and per-noise-level rates. For the scalar-FD kind
// the sigma sweep collapses to a single pass. Deterministic given the
// manifest and config; independent of the parallel schedule.
ExperimentReport run_experiment(const DatasetManifest& manifest, const ExperimentConfig& config);

// Full sweep grids used by the CLI defaults.
std::vector<int> full_radius_sweep();     // 10..50 by 5, then 75..225 by 25
std::vector<double> full_sigma_sweep();   // 10, 15, 20, 25

// Serialization: versioned JSON (machine), aligned text tables (human), and
// CSV confusion matrices.
std::string report_json(const ExperimentReport& report);
std::string report_text(const ExperimentReport& report);
std::string confusion_csv(const ConfusionMatrix& matrix);

}  // namespace fracdim
