// fracdim: shape complexity estimation from binary images.
//
// Subcommands cover every pipeline stage (edt, fd, mfd, descriptors) plus the
// synthetic dataset generator and the classification experiment. stdout
// carries data only; diagnostics go to stderr. Exit codes: 0 success,
// 2 I/O or parse failure, 3 violated domain precondition.

#include "fracdim/classify.hpp"
#include "fracdim/dataset.hpp"
#include "fracdim/edt.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/mfd.hpp"
#include "fracdim/minkowski.hpp"
#include "fracdim/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fracdim;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;
constexpr int kExitDomain = 3;

// %.12g with a guaranteed decimal point, so integral values print as "1.0".
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".eEnN") == std::string::npos) s += ".0";
  return s;
}

void write_output(const std::string& data, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + out_path);
  file << data;
  if (!file) throw IoError("write failure on " + out_path);
}

std::string loglog_csv(const LogLogCurve& curve) {
  std::ostringstream os;
  os << "t,u\n";
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    os << fmt_double(curve.t(i)) << ',' << fmt_double(curve.u(i)) << '\n';
  return os.str();
}

struct PipelineOptions {
  std::string input;
  std::string output = "-";
  int r_max = kDefaultRMax;
  double sigma = kDefaultSigma;
  int n = kDefaultSamples;
  int r_min = kDefaultRMin;
};

void add_common(CLI::App* cmd, PipelineOptions& opt, bool with_sigma) {
  cmd->add_option("--in", opt.input, "input PBM image (P1 or P4)")->required();
  cmd->add_option("--out", opt.output, "output path, - for stdout")
      ->capture_default_str();
  cmd->add_option("--r-max", opt.r_max, "maximum dilation radius in pixels")
      ->capture_default_str();
  if (with_sigma)
    cmd->add_option("--sigma", opt.sigma, "Gaussian smoothing, in samples")
        ->capture_default_str();
  cmd->add_option("--n", opt.n, "uniform resampling length")->capture_default_str();
  cmd->add_option("--r-min", opt.r_min, "low-sampling trim radius")
      ->capture_default_str();
}

void validate(const PipelineOptions& opt) {
  if (opt.r_max < 1) throw DomainError("r-max must be >= 1");
  if (opt.sigma < 0) throw DomainError("sigma must be >= 0");
  if (opt.n < 8) throw DomainError("n must be >= 8");
  if (opt.r_min < 1) throw DomainError("r-min must be >= 1");
}

LogLogCurve trimmed_curve(const BinaryShape& shape, int r_max, int r_min) {
  const BinaryShape padded = pad(shape, r_max + 1);
  return trim_low_sampling(loglog_curve(influence_histogram(squared_edt(padded), r_max)),
                           r_min);
}

int cmd_edt(const PipelineOptions& opt) {
  const BinaryShape shape = load_pbm(opt.input);
  const DistanceMap dmap = squared_edt(shape);
  std::ostringstream os;
  for (Eigen::Index y = 0; y < dmap.height(); ++y) {
    for (Eigen::Index x = 0; x < dmap.width(); ++x) {
      if (x) os << ',';
      os << dmap.d2(y, x);
    }
    os << '\n';
  }
  write_output(os.str(), opt.output);
  return kExitOk;
}

int cmd_fd(const PipelineOptions& opt, const std::string& format,
           const std::string& curve_out) {
  validate(opt);
  const BinaryShape shape = load_pbm(opt.input);
  const LogLogCurve curve = trimmed_curve(shape, opt.r_max, opt.r_min);
  const FdFit fit = fit_fd(curve);

  if (!curve_out.empty()) write_output(loglog_csv(curve), curve_out);

  if (format == "csv") {
    std::ostringstream os;
    os << "slope,intercept,dimension,residual\n"
       << fmt_double(fit.slope) << ',' << fmt_double(fit.intercept) << ','
       << fmt_double(fit.dimension) << ',' << fmt_double(fit.residual) << '\n';
    write_output(os.str(), opt.output);
  } else {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["r_max"] = opt.r_max;
    j["r_min"] = opt.r_min;
    j["points"] = curve.size();
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["dimension"] = fit.dimension;
    j["residual"] = fit.residual;
    write_output(j.dump(2) + "\n", opt.output);
  }
  return kExitOk;
}

int cmd_mfd(const PipelineOptions& opt) {
  validate(opt);
  const BinaryShape shape = load_pbm(opt.input);
  const MfdCurve curve = compute_mfd(shape, opt.r_max, opt.sigma, opt.n, opt.r_min);

  nlohmann::ordered_json params;
  params["r_max"] = curve.params.r_max;
  params["sigma"] = curve.params.sigma;
  params["n"] = opt.n;
  params["r_min"] = opt.r_min;
  params["t0"] = curve.t0;
  params["dt"] = curve.dt;

  std::ostringstream os;
  os << "# " << params.dump() << "\n";
  os << "t,mfd\n";
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    os << fmt_double(curve.t0 + static_cast<double>(i) * curve.dt) << ','
       << fmt_double(curve.values(i)) << '\n';
  write_output(os.str(), opt.output);
  return kExitOk;
}

int cmd_descriptors(const PipelineOptions& opt, int k) {
  validate(opt);
  if (k < 1) throw DomainError("k must be >= 1");
  const BinaryShape shape = load_pbm(opt.input);
  const MfdCurve curve = compute_mfd(shape, opt.r_max, opt.sigma, opt.n, opt.r_min);
  const DescriptorVector d = fourier_descriptors(curve, k);

  std::ostringstream os;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (i) os << ',';
    os << fmt_double(d.magnitudes(i));
  }
  os << '\n';
  write_output(os.str(), opt.output);
  return kExitOk;
}

int cmd_gen_dataset(const DatasetConfig& config, const std::string& out_dir) {
  generate(config, out_dir);
  return kExitOk;
}

int cmd_experiment(const std::string& manifest_path, const ExperimentConfig& config,
                   const std::string& out, bool text, const std::string& confusion_dir) {
  if (config.n < 8) throw DomainError("n must be >= 8");
  if (config.r_min < 1) throw DomainError("r-min must be >= 1");
  for (const int r : config.r_values)
    if (r < 1) throw DomainError("r must be >= 1");
  for (const double s : config.sigma_values)
    if (s < 0) throw DomainError("sigma must be >= 0");

  const DatasetManifest manifest = load_manifest(manifest_path);
  const ExperimentReport report = run_experiment(manifest, config);

  write_output(report_json(report), out);
  if (text && !(out.empty() || out == "-")) std::cout << report_text(report);

  if (!confusion_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(confusion_dir, ec);
    if (ec) throw IoError("cannot create " + confusion_dir + ": " + ec.message());
    for (const ConfigReport& cr : report.configs) {
      std::ostringstream name;
      name << "confusion_" << to_string(config.kind) << "_r" << cr.r_max << "_s"
           << fmt_double(cr.sigma) << ".csv";
      write_output(confusion_csv(cr.confusion),
                   (std::filesystem::path(confusion_dir) / name.str()).string());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bouligand-Minkowski fractal dimension and multi-scale fractal "
               "dimension toolkit"};
  app.require_subcommand(1);

  PipelineOptions edt_opt;
  CLI::App* edt_cmd = app.add_subcommand("edt", "squared Euclidean distance transform as CSV");
  edt_cmd->add_option("--in", edt_opt.input, "input PBM image (P1 or P4)")->required();
  edt_cmd->add_option("--out", edt_opt.output, "output path, - for stdout")
      ->capture_default_str();

  PipelineOptions fd_opt;
  std::string fd_format = "json";
  std::string fd_curve_out;
  CLI::App* fd_cmd = app.add_subcommand("fd", "scalar fractal dimension by line regression");
  add_common(fd_cmd, fd_opt, false);
  fd_cmd->add_option("--format", fd_format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  fd_cmd->add_option("--curve-out", fd_curve_out, "also dump the trimmed log-log curve CSV");

  PipelineOptions mfd_opt;
  CLI::App* mfd_cmd = app.add_subcommand("mfd", "multi-scale fractal dimension curve as CSV");
  add_common(mfd_cmd, mfd_opt, true);

  PipelineOptions desc_opt;
  int desc_k = kDefaultDescriptors;
  CLI::App* desc_cmd =
      app.add_subcommand("descriptors", "normalized Fourier descriptors of the MFD curve");
  add_common(desc_cmd, desc_opt, true);
  desc_cmd->add_option("--k", desc_k, "descriptor count")->capture_default_str();

  DatasetConfig gen_config;
  std::string gen_out_dir;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-dataset", "generate the synthetic noisy-letter dataset");
  gen_cmd->add_option("--out-dir", gen_out_dir, "output directory")->required();
  gen_cmd->add_option("--classes", gen_config.classes, "letters to generate")
      ->capture_default_str();
  gen_cmd->add_option("--image-size", gen_config.image_size, "canvas size in pixels")
      ->capture_default_str();
  gen_cmd->add_option("--samples", gen_config.samples_per_cell,
                      "samples per (class, noise level) cell")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_config.base_seed, "base seed")->capture_default_str();

  ExperimentConfig exp_config;
  exp_config.r_values = full_radius_sweep();
  exp_config.sigma_values = full_sigma_sweep();
  std::string exp_manifest;
  std::string exp_kind = "mfd";
  std::string exp_out = "-";
  std::string exp_confusion_dir;
  bool exp_text = false;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "classification experiment sweep");
  exp_cmd->add_option("--manifest", exp_manifest, "dataset manifest path")->required();
  exp_cmd->add_option("--r", exp_config.r_values, "dilation radii to sweep")
      ->capture_default_str();
  exp_cmd->add_option("--sigma", exp_config.sigma_values, "sigma values to sweep")
      ->capture_default_str();
  exp_cmd->add_option("--kind", exp_kind, "signature kind: mfd, descriptors, or fd")
      ->check(CLI::IsMember({"mfd", "descriptors", "fd"}))
      ->capture_default_str();
  exp_cmd->add_option("--k", exp_config.descriptor_count, "descriptor count")
      ->capture_default_str();
  exp_cmd->add_option("--n", exp_config.n, "uniform resampling length")
      ->capture_default_str();
  exp_cmd->add_option("--r-min", exp_config.r_min, "low-sampling trim radius")
      ->capture_default_str();
  exp_cmd->add_option("--per-level-train", exp_config.per_level_train,
                      "training samples per (class, level) cell")
      ->capture_default_str();
  exp_cmd->add_option("--split-seed", exp_config.split_seed, "train/test split seed")
      ->capture_default_str();
  exp_cmd->add_option("--jobs", exp_config.jobs, "worker threads, 0 = hardware")
      ->capture_default_str();
  exp_cmd->add_option("--out", exp_out, "JSON report path, - for stdout")
      ->capture_default_str();
  exp_cmd->add_flag("--text", exp_text, "also print an aligned text summary to stdout");
  exp_cmd->add_option("--confusion-csv", exp_confusion_dir,
                      "directory for per-config confusion matrix CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    if (edt_cmd->parsed()) return cmd_edt(edt_opt);
    if (fd_cmd->parsed()) return cmd_fd(fd_opt, fd_format, fd_curve_out);
    if (mfd_cmd->parsed()) return cmd_mfd(mfd_opt);
    if (desc_cmd->parsed()) return cmd_descriptors(desc_opt, desc_k);
    if (gen_cmd->parsed()) return cmd_gen_dataset(gen_config, gen_out_dir);
    if (exp_cmd->parsed()) {
      exp_config.kind = signature_kind_from_string(exp_kind);
      return cmd_experiment(exp_manifest, exp_config, exp_out, exp_text,
                            exp_confusion_dir);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
