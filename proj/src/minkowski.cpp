#include "fracdim/minkowski.hpp"

#include "fracdim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fracdim {
namespace {

InfluenceHistogram from_sorted_values(std::vector<std::int64_t> values, int r_max) {
  std::sort(values.begin(), values.end());
  Eigen::Index attained = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    attained += (i == 0 || values[i] != values[i - 1]);

  InfluenceHistogram hist;
  hist.r_max = r_max;
  hist.r2.resize(attained);
  hist.area.resize(attained);
  Eigen::Index j = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] != values[i - 1]) {
      ++j;
      hist.r2(j) = values[i];
    }
    hist.area(j) = static_cast<std::int64_t>(i) + 1;
  }
  return hist;
}

}  // namespace

InfluenceHistogram influence_histogram(const DistanceMap& dmap, int r_max) {
  if (r_max < 1) throw DomainError("influence_histogram: r_max must be >= 1");
  const std::int64_t limit = static_cast<std::int64_t>(r_max) * r_max;
  const std::int64_t* p = dmap.d2.data();
  const std::int64_t* end = p + dmap.d2.size();

  // Direct bucket counting when the value range is small; sort-based
  // aggregation otherwise.
  constexpr std::int64_t kMaxBuckets = 1 << 24;
  if (limit + 1 > kMaxBuckets) {
    std::vector<std::int64_t> values;
    for (; p != end; ++p)
      if (*p <= limit) values.push_back(*p);
    return from_sorted_values(std::move(values), r_max);
  }

  std::vector<std::int64_t> counts(static_cast<std::size_t>(limit) + 1, 0);
  for (; p != end; ++p)
    if (*p <= limit) ++counts[static_cast<std::size_t>(*p)];

  Eigen::Index attained = 0;
  for (const std::int64_t c : counts) attained += (c > 0);

  InfluenceHistogram hist;
  hist.r_max = r_max;
  hist.r2.resize(attained);
  hist.area.resize(attained);
  Eigen::Index i = 0;
  std::int64_t cumulative = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    cumulative += counts[v];
    hist.r2(i) = static_cast<std::int64_t>(v);
    hist.area(i) = cumulative;
    ++i;
  }
  return hist;
}

LogLogCurve loglog_curve(const InfluenceHistogram& hist) {
  Eigen::Index usable = 0;
  for (Eigen::Index i = 0; i < hist.r2.size(); ++i) usable += (hist.r2(i) >= 1);
  if (usable < 3)
    throw DomainError("loglog_curve: degenerate curve (fewer than 3 entries with r2 >= 1)");

  LogLogCurve curve;
  curve.t.resize(usable);
  curve.u.resize(usable);
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < hist.r2.size(); ++i) {
    if (hist.r2(i) < 1) continue;
    curve.t(j) = 0.5 * std::log(static_cast<double>(hist.r2(i)));
    curve.u(j) = std::log(static_cast<double>(hist.area(i)));
    ++j;
  }
  return curve;
}

FdFit fit_fd(const LogLogCurve& curve, double t_lo, double t_hi) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    if (curve.t(i) >= t_lo && curve.t(i) <= t_hi) keep.push_back(i);
  if (keep.size() < 2) throw DomainError("fit_fd: fewer than 2 points in range");

  Eigen::ArrayXd t(keep.size()), u(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    t(static_cast<Eigen::Index>(i)) = curve.t(keep[i]);
    u(static_cast<Eigen::Index>(i)) = curve.u(keep[i]);
  }

  const double t_mean = t.mean();
  const double u_mean = u.mean();
  const double var = ((t - t_mean) * (t - t_mean)).sum();
  if (var == 0.0) throw DomainError("fit_fd: singular fit (all t identical)");

  FdFit fit;
  fit.slope = ((t - t_mean) * (u - u_mean)).sum() / var;
  fit.intercept = u_mean - fit.slope * t_mean;
  fit.dimension = 2.0 - fit.slope;
  fit.residual =
      std::sqrt(((u - (fit.slope * t + fit.intercept)).square()).mean());
  return fit;
}

FdFit fit_fd(const LogLogCurve& curve) {
  return fit_fd(curve, -std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity());
}

}  // namespace fracdim
