#pragma once

#include "fracdim/raster.hpp"

#include <cstdint>

namespace fracdim {

using DistanceGrid =
    Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Exact squared Euclidean distance from every pixel to the nearest foreground
// pixel. Zero exactly on the foreground. Squared integer distances keep the
// transform exact; take square roots only when real radii are needed.
struct DistanceMap {
  DistanceGrid d2;

  Eigen::Index width() const { return d2.cols(); }
  Eigen::Index height() const { return d2.rows(); }
};

// Separable exact transform: per-column nearest-foreground scan, then a
// per-row lower-envelope pass over the column distances. O(w*h) per pass,
// all-integer arithmetic. Requires at least one foreground pixel.
DistanceMap squared_edt(const BinaryShape& shape);

// All-pairs reference: per pixel, the minimum squared distance over every
// foreground pixel. Quadratic; exists as an independent cross-check for
// squared_edt.
DistanceMap brute_force_edt(const BinaryShape& shape);

}  // namespace fracdim
