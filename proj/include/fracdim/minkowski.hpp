#pragma once

#include "fracdim/edt.hpp"

#include <cstdint>

namespace fracdim {

using IndexArray = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;

// Cumulative dilation areas keyed by the attained squared radii. Entry i says:
// area(i) pixels lie within distance sqrt(r2(i)) of the shape. Sampling
// exactly at the attained values captures every change of the discrete
// dilation without aliasing.
struct InfluenceHistogram {
  IndexArray r2;    // strictly ascending; first entry is 0 (the shape itself)
  IndexArray area;  // strictly increasing cumulative pixel counts
  int r_max = 0;
};

// Log-log dilation curve: t = ln r, u = ln A(r). The r = 0 histogram entry is
// excluded (its log is undefined).
struct LogLogCurve {
  Eigen::ArrayXd t;
  Eigen::ArrayXd u;

  Eigen::Index size() const { return t.size(); }
};

// Least-squares line through a log-log window. dimension = 2 - slope.
struct FdFit {
  double slope = 0.0;
  double intercept = 0.0;  // ln of the power-law prefactor
  double dimension = 0.0;
  double residual = 0.0;  // root-mean-square vertical residual
};

// Counts, for every attained squared distance v <= r_max^2, the pixels with
// d2 <= v. The caller must have padded the shape by at least r_max so the
// dilation never clips at the canvas border.
InfluenceHistogram influence_histogram(const DistanceMap& dmap, int r_max);

// Natural logarithms of the histogram; needs at least 3 entries with r2 >= 1.
LogLogCurve loglog_curve(const InfluenceHistogram& hist);

// Ordinary least squares over the points with t in [t_lo, t_hi].
FdFit fit_fd(const LogLogCurve& curve, double t_lo, double t_hi);

// Fit over the whole curve.
FdFit fit_fd(const LogLogCurve& curve);

}  // namespace fracdim
