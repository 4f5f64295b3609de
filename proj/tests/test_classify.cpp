#include "fracdim/classify.hpp"

#include "fracdim/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <set>

using namespace fracdim;

namespace {

DatasetManifest fake_manifest(const std::vector<char>& classes, const std::vector<int>& levels,
                              int samples_per_cell) {
  DatasetManifest m;
  m.image_size = 32;
  m.samples_per_cell = samples_per_cell;
  m.classes = classes;
  for (const char label : classes)
    for (const int level : levels)
      for (int i = 0; i < samples_per_cell; ++i) {
        SampleRecord rec;
        rec.label = label;
        rec.level = level;
        rec.seed = static_cast<std::uint64_t>(i);
        rec.path = "unused.pbm";
        m.samples.push_back(rec);
      }
  return m;
}

BinaryShape thin_cross(int canvas) {
  BinaryShape s = make_shape(canvas, canvas);
  const int mid = canvas / 2;
  for (int i = 4; i < canvas - 4; ++i) {
    s.pixels(mid, i) = true;
    s.pixels(i, mid) = true;
  }
  return s;
}

}  // namespace

TEST_CASE("split reproduces the source proportions: 12 train, 40 test per class") {
  const DatasetManifest m = fake_manifest({'A', 'B'}, {1, 2, 3, 4}, 13);
  const SplitResult split = split_train_test(m, 3, 7);
  CHECK(split.train.size() == 2 * 4 * 3);
  CHECK(split.test.size() == 2 * 4 * 10);

  for (const char label : {'A', 'B'}) {
    int train_count = 0, test_count = 0;
    for (const std::size_t i : split.train) train_count += (m.samples[i].label == label);
    for (const std::size_t i : split.test) test_count += (m.samples[i].label == label);
    CHECK(train_count == 12);
    CHECK(test_count == 40);
  }

  // Disjoint and exhaustive.
  std::set<std::size_t> all(split.train.begin(), split.train.end());
  for (const std::size_t i : split.test) CHECK(all.insert(i).second);
  CHECK(all.size() == m.samples.size());
}

TEST_CASE("split leaves one test sample when training takes all but one") {
  const DatasetManifest m = fake_manifest({'A'}, {0, 1}, 5);
  const SplitResult split = split_train_test(m, 4, 3);
  CHECK(split.train.size() == 8);
  CHECK(split.test.size() == 2);
}

TEST_CASE("split is deterministic in the seed") {
  const DatasetManifest m = fake_manifest({'A', 'B', 'C'}, {0, 1, 2, 3, 4}, 6);
  const SplitResult a = split_train_test(m, 2, 42);
  const SplitResult b = split_train_test(m, 2, 42);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  const SplitResult c = split_train_test(m, 2, 43);
  CHECK(a.train != c.train);
}

TEST_CASE("split validates the training count") {
  const DatasetManifest m = fake_manifest({'A'}, {0}, 4);
  CHECK_THROWS_AS(split_train_test(m, 4, 1), DomainError);
  CHECK_THROWS_AS(split_train_test(m, 0, 1), DomainError);
}

TEST_CASE("centroid of one sample is that sample's signature") {
  SignatureParams params;
  params.kind = SignatureKind::kMfd;
  params.r_max = 20;
  params.n = 64;
  const BinaryShape a = glyph('A', 48);
  const BinaryShape b = glyph('B', 48);
  const std::vector<ClassModel> models =
      build_models({'A', 'B'}, {&a, &b}, params, 1);
  REQUIRE(models.size() == 2);
  CHECK(models[0].label == 'A');
  CHECK(models[1].label == 'B');
  CHECK((models[0].centroid == compute_signature(a, params)).all());

  // Two identical samples: centroid equals either.
  const std::vector<ClassModel> dup = build_models({'A', 'A'}, {&a, &a}, params, 1);
  REQUIRE(dup.size() == 1);
  CHECK((dup[0].centroid - compute_signature(a, params)).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("centroid equals the brute-force elementwise mean") {
  std::vector<Eigen::ArrayXd> sigs;
  std::vector<char> labels;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::ArrayXd expected = Eigen::ArrayXd::Zero(17);
  for (int i = 0; i < 7; ++i) {
    Eigen::ArrayXd s(17);
    for (Eigen::Index j = 0; j < 17; ++j) s(j) = g(rng);
    expected += s;
    sigs.push_back(s);
    labels.push_back('Q');
  }
  expected /= 7.0;
  const std::vector<ClassModel> models = models_from_signatures(labels, sigs);
  REQUIRE(models.size() == 1);
  CHECK((models[0].centroid - expected).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("classification basics") {
  std::vector<ClassModel> models;
  Eigen::ArrayXd ca(1), cb(1);
  ca << 0.9;
  cb << 1.4;
  models.push_back({'A', ca});
  models.push_back({'B', cb});

  SUBCASE("exact centroid match wins") {
    CHECK(classify_sample(ca, models) == 'A');
    CHECK(classify_sample(cb, models) == 'B');
  }
  SUBCASE("scalar FD distance is the absolute difference") {
    Eigen::ArrayXd s(1);
    s << 1.0;
    CHECK(classify_sample(s, models) == 'A');  // |0.1| < |0.4|
  }
  SUBCASE("ties break to the lexicographically smaller label") {
    Eigen::ArrayXd s(1);
    s << 1.15;  // equidistant
    CHECK(classify_sample(s, models) == 'A');
  }
  SUBCASE("dimension mismatch is rejected") {
    Eigen::ArrayXd s(2);
    s << 1.0, 1.0;
    CHECK_THROWS_WITH_AS(classify_sample(s, models), doctest::Contains("dimension"),
                         DomainError);
  }
}

TEST_CASE("argmin is invariant under common positive rescaling") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ClassModel> models;
    for (char c = 'A'; c < 'F'; ++c) {
      Eigen::ArrayXd centroid(6);
      for (Eigen::Index j = 0; j < 6; ++j) centroid(j) = g(rng);
      models.push_back({c, centroid});
    }
    Eigen::ArrayXd s(6);
    for (Eigen::Index j = 0; j < 6; ++j) s(j) = g(rng);

    const char plain = classify_sample(s, models);
    std::vector<ClassModel> scaled = models;
    for (ClassModel& m : scaled) m.centroid *= 37.5;
    CHECK(classify_sample(Eigen::ArrayXd(37.5 * s), scaled) == plain);
  }
}

TEST_CASE("full-spectrum distances agree with raw distances (Parseval)") {
  // >= 100 sample pairs: noisy letter shapes, MFD signatures.
  std::vector<Eigen::ArrayXd> sigs;
  for (const char letter : {'A', 'T'}) {
    const BinaryShape base = glyph(letter, 48);
    for (int seed = 0; seed < 51; ++seed)
      sigs.push_back(
          compute_mfd(add_boundary_noise(base, 2, static_cast<std::uint64_t>(seed)), 20,
                      5.0, 64, 2)
              .values);
  }
  REQUIRE(sigs.size() >= 100);
  const double root_n = std::sqrt(64.0);
  for (std::size_t i = 1; i < sigs.size(); ++i) {
    const double raw = std::sqrt((sigs[i] - sigs[i - 1]).square().sum());
    const double spectral =
        std::sqrt((dft(sigs[i]) - dft(sigs[i - 1])).abs2().sum()) / root_n;
    REQUIRE(std::abs(raw - spectral) <= 1e-6 * (1.0 + raw));
  }

  // Nearest-centroid decisions agree under both metrics.
  std::vector<ClassModel> models;
  Eigen::ArrayXd mean_a = Eigen::ArrayXd::Zero(64), mean_t = Eigen::ArrayXd::Zero(64);
  for (int i = 0; i < 51; ++i) mean_a += sigs[static_cast<std::size_t>(i)];
  for (int i = 51; i < 102; ++i) mean_t += sigs[static_cast<std::size_t>(i)];
  models.push_back({'A', mean_a / 51.0});
  models.push_back({'T', mean_t / 51.0});
  for (const Eigen::ArrayXd& s : sigs) {
    const char raw_pick = classify_sample(s, models);
    double best = std::numeric_limits<double>::infinity();
    char spec_pick = 0;
    for (const ClassModel& m : models) {
      const double d = std::sqrt((dft(s) - dft(m.centroid)).abs2().sum()) / root_n;
      if (d < best) {
        best = d;
        spec_pick = m.label;
      }
    }
    REQUIRE(raw_pick == spec_pick);
  }
}

TEST_CASE("two well-separated classes classify perfectly") {
  testutil::TempDir dir("tmp_classify_sep");
  DatasetManifest manifest;
  manifest.image_size = 48;
  manifest.samples_per_cell = 8;
  manifest.classes = {'C', 'P'};
  manifest.root = dir.path();

  const BinaryShape disc = testutil::filled_disc(14);
  const BinaryShape cross = thin_cross(48);
  BinaryShape disc_canvas = make_shape(48, 48);
  disc_canvas.pixels.block(9, 9, disc.height(), disc.width()) = disc.pixels;

  for (int i = 0; i < 8; ++i) {
    for (const auto& [label, base] :
         std::vector<std::pair<char, const BinaryShape*>>{{'C', &disc_canvas},
                                                          {'P', &cross}}) {
      SampleRecord rec;
      rec.label = label;
      rec.level = 1;
      rec.seed = static_cast<std::uint64_t>(i);
      rec.path = std::string(1, label) + "_" + std::to_string(i) + ".pbm";
      save_pbm(add_boundary_noise(*base, 1, rec.seed), dir.path() / rec.path);
      manifest.samples.push_back(rec);
    }
  }

  ExperimentConfig config;
  config.r_values = {25};
  config.sigma_values = {5.0};
  config.kind = SignatureKind::kMfd;
  config.n = 64;
  config.r_min = 2;
  config.per_level_train = 3;
  config.jobs = 2;

  const ExperimentReport report = run_experiment(manifest, config);
  REQUIRE(report.configs.size() == 1);
  CHECK(report.configs[0].success_rate == 1.0);

  // Separability: centroids are farther apart than any member strays from
  // its own centroid.
  SignatureParams params;
  params.kind = SignatureKind::kMfd;
  params.r_max = 25;
  params.sigma = 5.0;
  params.n = 64;
  params.r_min = 2;
  std::vector<Eigen::ArrayXd> disc_sigs, cross_sigs;
  for (int i = 0; i < 8; ++i) {
    disc_sigs.push_back(compute_signature(
        add_boundary_noise(disc_canvas, 1, static_cast<std::uint64_t>(i)), params));
    cross_sigs.push_back(compute_signature(
        add_boundary_noise(cross, 1, static_cast<std::uint64_t>(i)), params));
  }
  Eigen::ArrayXd c_disc = Eigen::ArrayXd::Zero(64), c_cross = Eigen::ArrayXd::Zero(64);
  for (const auto& s : disc_sigs) c_disc += s;
  for (const auto& s : cross_sigs) c_cross += s;
  c_disc /= 8.0;
  c_cross /= 8.0;
  const double inter = std::sqrt((c_disc - c_cross).square().sum());
  double max_intra = 0.0;
  for (const auto& s : disc_sigs)
    max_intra = std::max(max_intra, std::sqrt((s - c_disc).square().sum()));
  for (const auto& s : cross_sigs)
    max_intra = std::max(max_intra, std::sqrt((s - c_cross).square().sum()));
  CHECK(inter > 2.0 * max_intra);
}

TEST_CASE("experiment reports are complete and deterministic") {
  testutil::TempDir dir("tmp_classify_exp");
  DatasetConfig dataset_config;
  dataset_config.classes = "AIO";
  dataset_config.image_size = 48;
  dataset_config.samples_per_cell = 4;
  dataset_config.base_seed = 5;
  const DatasetManifest manifest = generate(dataset_config, dir.path());

  ExperimentConfig config;
  config.r_values = {10, 20};
  config.sigma_values = {5.0};
  config.kind = SignatureKind::kMfd;
  config.n = 64;
  config.r_min = 2;
  config.per_level_train = 2;
  config.jobs = 3;

  const ExperimentReport a = run_experiment(manifest, config);
  REQUIRE(a.configs.size() == 2);

  // Row sums equal the per-class test totals.
  for (const ConfigReport& cr : a.configs) {
    for (Eigen::Index i = 0; i < cr.confusion.counts.rows(); ++i)
      CHECK(cr.confusion.counts.row(i).sum() == 5 * 2);  // 5 levels x 2 test per cell
    std::int64_t level_total = 0;
    for (const auto& [level, stats] : cr.per_level) level_total += stats.total;
    CHECK(level_total == cr.confusion.total());
    CHECK(cr.success_rate == doctest::Approx(cr.confusion.success_rate()));
  }

  // Byte-identical reports across runs and parallel schedules.
  ExperimentConfig serial = config;
  serial.jobs = 1;
  const ExperimentReport b = run_experiment(manifest, serial);
  CHECK(report_json(a) == report_json(b));

  // Schema sanity via a real JSON parser.
  const nlohmann::json parsed = nlohmann::json::parse(report_json(a));
  CHECK(parsed["schema_version"] == 1);
  CHECK(parsed["kind"] == "mfd");
  CHECK(parsed["configs"].size() == 2);
  CHECK(parsed["configs"][0].contains("success_rate"));
  CHECK(parsed["configs"][0]["per_level"].size() == 5);
  CHECK(parsed["configs"][0]["confusion"].size() == 3);

  // Text and CSV renderings exist and carry the labels.
  const std::string text = report_text(a);
  CHECK(text.find("r_max") != std::string::npos);
  const std::string csv = confusion_csv(a.configs[0].confusion);
  CHECK(csv.find("A,") != std::string::npos);
}

TEST_CASE("experiment validates its configuration") {
  const DatasetManifest m = fake_manifest({'A'}, {0, 1}, 4);
  ExperimentConfig config;
  config.r_values = {};
  CHECK_THROWS_AS(run_experiment(m, config), DomainError);
  config.r_values = {10};
  config.sigma_values = {};
  CHECK_THROWS_AS(run_experiment(m, config), DomainError);
  config.sigma_values = {10.0};
  config.kind = SignatureKind::kDescriptors;
  config.descriptor_count = 0;
  CHECK_THROWS_AS(run_experiment(m, config), DomainError);
}

TEST_CASE("signature kinds have the advertised dimensions") {
  SignatureParams params;
  params.r_max = 20;
  params.n = 64;
  params.k = 10;
  const BinaryShape shape = glyph('M', 48);

  params.kind = SignatureKind::kMfd;
  CHECK(compute_signature(shape, params).size() == 64);
  params.kind = SignatureKind::kDescriptors;
  CHECK(compute_signature(shape, params).size() == 10);
  CHECK(compute_signature(shape, params)(0) == 1.0);
  params.kind = SignatureKind::kFd;
  const Eigen::ArrayXd fd = compute_signature(shape, params);
  CHECK(fd.size() == 1);
  CHECK(fd(0) > 0.5);
  CHECK(fd(0) < 2.0);

  CHECK(to_string(SignatureKind::kFd) == "fd");
  CHECK(signature_kind_from_string("descriptors") == SignatureKind::kDescriptors);
  CHECK_THROWS_AS(signature_kind_from_string("nope"), DomainError);
}
