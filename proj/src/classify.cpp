#include "fracdim/classify.hpp"

#include "fracdim/errors.hpp"
#include "fracdim/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace fracdim {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double euclidean(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  return std::sqrt((a - b).square().sum());
}

}  // namespace

std::string to_string(SignatureKind kind) {
  switch (kind) {
    case SignatureKind::kMfd: return "mfd";
    case SignatureKind::kDescriptors: return "descriptors";
    case SignatureKind::kFd: return "fd";
  }
  return "?";
}

SignatureKind signature_kind_from_string(const std::string& name) {
  if (name == "mfd") return SignatureKind::kMfd;
  if (name == "descriptors") return SignatureKind::kDescriptors;
  if (name == "fd") return SignatureKind::kFd;
  throw DomainError("unknown signature kind '" + name + "'");
}

Eigen::Index SignatureParams::dimension() const {
  switch (kind) {
    case SignatureKind::kMfd: return n;
    case SignatureKind::kDescriptors: return k;
    case SignatureKind::kFd: return 1;
  }
  return 0;
}

Eigen::ArrayXd compute_signature(const BinaryShape& shape, const SignatureParams& params) {
  switch (params.kind) {
    case SignatureKind::kMfd:
      return compute_mfd(shape, params.r_max, params.sigma, params.n, params.r_min).values;
    case SignatureKind::kDescriptors:
      return fourier_descriptors(
                 compute_mfd(shape, params.r_max, params.sigma, params.n, params.r_min),
                 params.k)
          .magnitudes;
    case SignatureKind::kFd: {
      const BinaryShape padded = pad(shape, params.r_max + 1);
      const LogLogCurve curve = trim_low_sampling(
          loglog_curve(influence_histogram(squared_edt(padded), params.r_max)),
          params.r_min);
      Eigen::ArrayXd sig(1);
      sig(0) = fit_fd(curve).dimension;
      return sig;
    }
  }
  throw DomainError("unknown signature kind");
}

std::int64_t ConfusionMatrix::correct() const {
  std::int64_t sum = 0;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) sum += counts(i, i);
  return sum;
}

double ConfusionMatrix::success_rate() const {
  const std::int64_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(correct()) / static_cast<double>(n);
}

SplitResult split_train_test(const DatasetManifest& manifest, int per_level_train,
                             std::uint64_t seed) {
  if (per_level_train < 1)
    throw DomainError("split_train_test: per_level_train must be >= 1");
  if (per_level_train >= manifest.samples_per_cell)
    throw DomainError("split_train_test: per_level_train must be < samples_per_cell");

  // Group record indices per (label, level) cell, in manifest order.
  std::map<std::pair<char, int>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
    const SampleRecord& rec = manifest.samples[i];
    cells[{rec.label, rec.level}].push_back(i);
  }

  SplitResult split;
  for (auto& [key, indices] : cells) {
    if (static_cast<std::size_t>(per_level_train) >= indices.size())
      throw DomainError("split_train_test: insufficient samples in cell");
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(
        (static_cast<std::uint64_t>(key.first) << 8) | static_cast<std::uint64_t>(key.second))));
    std::shuffle(indices.begin(), indices.end(), rng);
    for (std::size_t j = 0; j < indices.size(); ++j)
      (j < static_cast<std::size_t>(per_level_train) ? split.train : split.test)
          .push_back(indices[j]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<ClassModel> models_from_signatures(const std::vector<char>& labels,
                                               const std::vector<Eigen::ArrayXd>& signatures) {
  if (labels.size() != signatures.size())
    throw DomainError("models_from_signatures: label/signature count mismatch");
  if (labels.empty()) throw DomainError("models_from_signatures: empty training set");

  std::map<char, std::pair<Eigen::ArrayXd, std::int64_t>> sums;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = sums.find(labels[i]);
    if (it == sums.end()) {
      sums.emplace(labels[i], std::make_pair(signatures[i], std::int64_t{1}));
    } else {
      if (it->second.first.size() != signatures[i].size())
        throw DomainError("models_from_signatures: signature dimension mismatch");
      it->second.first += signatures[i];
      ++it->second.second;
    }
  }

  std::vector<ClassModel> models;
  models.reserve(sums.size());
  for (const auto& [label, sum] : sums)
    models.push_back({label, sum.first / static_cast<double>(sum.second)});
  return models;  // std::map iteration is already label-sorted
}

std::vector<ClassModel> build_models(const std::vector<char>& labels,
                                     const std::vector<const BinaryShape*>& shapes,
                                     const SignatureParams& params, int jobs) {
  if (labels.size() != shapes.size())
    throw DomainError("build_models: label/shape count mismatch");
  std::vector<Eigen::ArrayXd> signatures(shapes.size());
  parallel_for(shapes.size(), jobs,
               [&](std::size_t i) { signatures[i] = compute_signature(*shapes[i], params); });
  return models_from_signatures(labels, signatures);
}

char classify_sample(const Eigen::ArrayXd& signature, const std::vector<ClassModel>& models) {
  if (models.empty()) throw DomainError("classify_sample: no models");
  char best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const ClassModel& model : models) {
    if (model.centroid.size() != signature.size())
      throw DomainError("classify_sample: signature dimension mismatch");
    const double d = euclidean(signature, model.centroid);
    // Strict < keeps the first (lexicographically smallest) label on ties;
    // models are label-sorted.
    if (d < best_distance) {
      best_distance = d;
      best = model.label;
    }
  }
  return best;
}

ExperimentReport run_experiment(const DatasetManifest& manifest,
                                const ExperimentConfig& config) {
  if (config.r_values.empty()) throw DomainError("run_experiment: empty r sweep");
  if (config.kind != SignatureKind::kFd && config.sigma_values.empty())
    throw DomainError("run_experiment: empty sigma sweep");
  if (config.kind == SignatureKind::kDescriptors && config.descriptor_count < 1)
    throw DomainError("run_experiment: descriptor count must be >= 1");

  const SplitResult split =
      split_train_test(manifest, config.per_level_train, config.split_seed);

  // Load every referenced image once; signatures are recomputed per (r, sigma).
  std::vector<BinaryShape> shapes(manifest.samples.size());
  parallel_for(manifest.samples.size(), config.jobs, [&](std::size_t i) {
    try {
      shapes[i] = load_pbm(manifest.root / manifest.samples[i].path);
    } catch (const std::exception& e) {
      throw IoError("sample " + manifest.samples[i].path + ": " + e.what());
    }
  });

  std::vector<char> classes = manifest.classes;
  std::sort(classes.begin(), classes.end());

  ExperimentReport report;
  report.config = config;
  report.train_size = split.train.size();
  report.test_size = split.test.size();
  report.classes = classes;

  const std::vector<double> sigmas =
      config.kind == SignatureKind::kFd ? std::vector<double>{0.0} : config.sigma_values;

  for (const int r : config.r_values) {
    for (const double sigma : sigmas) {
      SignatureParams params;
      params.kind = config.kind;
      params.r_max = r;
      params.sigma = sigma;
      params.n = config.n;
      params.r_min = config.r_min;
      params.k = config.descriptor_count;

      std::vector<Eigen::ArrayXd> signatures(manifest.samples.size());
      parallel_for(manifest.samples.size(), config.jobs, [&](std::size_t i) {
        try {
          signatures[i] = compute_signature(shapes[i], params);
        } catch (const std::exception& e) {
          throw DomainError("sample " + manifest.samples[i].path + ": " + e.what());
        }
      });

      std::vector<char> train_labels;
      std::vector<Eigen::ArrayXd> train_signatures;
      train_labels.reserve(split.train.size());
      train_signatures.reserve(split.train.size());
      for (const std::size_t i : split.train) {
        train_labels.push_back(manifest.samples[i].label);
        train_signatures.push_back(signatures[i]);
      }
      const std::vector<ClassModel> models =
          models_from_signatures(train_labels, train_signatures);

      std::vector<char> predicted(split.test.size());
      parallel_for(split.test.size(), config.jobs, [&](std::size_t j) {
        predicted[j] = classify_sample(signatures[split.test[j]], models);
      });

      ConfigReport cr;
      cr.r_max = r;
      cr.sigma = sigma;
      cr.confusion.labels = classes;
      cr.confusion.counts.setZero(static_cast<Eigen::Index>(classes.size()),
                                  static_cast<Eigen::Index>(classes.size()));
      const auto class_index = [&](char label) {
        return static_cast<Eigen::Index>(
            std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
      };
      for (std::size_t j = 0; j < split.test.size(); ++j) {
        const SampleRecord& rec = manifest.samples[split.test[j]];
        cr.confusion.counts(class_index(rec.label), class_index(predicted[j])) += 1;
        LevelStats& stats = cr.per_level[rec.level];
        ++stats.total;
        stats.correct += (predicted[j] == rec.label);
      }
      cr.success_rate = cr.confusion.success_rate();
      report.configs.push_back(std::move(cr));
    }
  }
  return report;
}

std::vector<int> full_radius_sweep() {
  return {10, 15, 20, 25, 30, 35, 40, 45, 50, 75, 100, 125, 150, 175, 200, 225};
}

std::vector<double> full_sigma_sweep() { return {10.0, 15.0, 20.0, 25.0}; }

std::string report_json(const ExperimentReport& report) {
  nlohmann::ordered_json root;
  root["schema_version"] = 1;
  root["kind"] = to_string(report.config.kind);
  if (report.config.kind == SignatureKind::kDescriptors)
    root["descriptor_count"] = report.config.descriptor_count;
  root["n"] = report.config.n;
  root["r_min"] = report.config.r_min;
  root["per_level_train"] = report.config.per_level_train;
  root["split_seed"] = report.config.split_seed;
  root["train_size"] = report.train_size;
  root["test_size"] = report.test_size;

  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const char c : report.classes) classes.push_back(std::string(1, c));
  root["classes"] = classes;

  nlohmann::ordered_json configs = nlohmann::ordered_json::array();
  for (const ConfigReport& cr : report.configs) {
    nlohmann::ordered_json jc;
    jc["r_max"] = cr.r_max;
    jc["sigma"] = cr.sigma;
    jc["success_rate"] = cr.success_rate;
    jc["correct"] = cr.confusion.correct();
    jc["total"] = cr.confusion.total();
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const auto& [level, stats] : cr.per_level) {
      nlohmann::ordered_json jl;
      jl["level"] = level;
      jl["total"] = stats.total;
      jl["correct"] = stats.correct;
      jl["rate"] = stats.rate();
      levels.push_back(std::move(jl));
    }
    jc["per_level"] = levels;
    nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < cr.confusion.counts.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Eigen::Index j = 0; j < cr.confusion.counts.cols(); ++j)
        row.push_back(cr.confusion.counts(i, j));
      confusion.push_back(std::move(row));
    }
    jc["confusion"] = confusion;
    configs.push_back(std::move(jc));
  }
  root["configs"] = configs;
  return root.dump(2) + "\n";
}

std::string report_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "kind=" << to_string(report.config.kind);
  if (report.config.kind == SignatureKind::kDescriptors)
    os << " k=" << report.config.descriptor_count;
  os << " n=" << report.config.n << " r_min=" << report.config.r_min
     << " train=" << report.train_size << " test=" << report.test_size << "\n\n";

  os << std::setw(7) << "r_max" << std::setw(8) << "sigma" << std::setw(10) << "success"
     << std::setw(12) << "correct";
  os << "   per-level rates (0..4)\n";
  for (const ConfigReport& cr : report.configs) {
    os << std::setw(7) << cr.r_max << std::setw(8) << std::fixed << std::setprecision(1)
       << cr.sigma << std::setw(9) << std::setprecision(2)
       << 100.0 * cr.success_rate << "%" << std::setw(7) << cr.confusion.correct() << "/"
       << cr.confusion.total() << "  ";
    for (const auto& [level, stats] : cr.per_level)
      os << ' ' << level << ':' << std::setprecision(1) << 100.0 * stats.rate() << '%';
    os << '\n';
  }
  return os.str();
}

std::string confusion_csv(const ConfusionMatrix& matrix) {
  std::ostringstream os;
  os << "true\\predicted";
  for (const char c : matrix.labels) os << ',' << c;
  os << '\n';
  for (Eigen::Index i = 0; i < matrix.counts.rows(); ++i) {
    os << matrix.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < matrix.counts.cols(); ++j) os << ',' << matrix.counts(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace fracdim
