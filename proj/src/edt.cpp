#include "fracdim/edt.hpp"

#include "fracdim/errors.hpp"

#include <vector>

namespace fracdim {
namespace {

void require_foreground(const BinaryShape& shape) {
  if (shape.foreground_count() == 0) throw DomainError("no foreground");
}

}  // namespace

DistanceMap squared_edt(const BinaryShape& shape) {
  require_foreground(shape);
  const Eigen::Index w = shape.width();
  const Eigen::Index h = shape.height();
  const std::int64_t inf = w + h;  // exceeds any vertical pixel distance

  // Column pass: g(y,x) = vertical distance to the nearest foreground pixel
  // in column x (inf when the column is empty).
  Eigen::Array<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> g(h, w);
  for (Eigen::Index x = 0; x < w; ++x) {
    g(0, x) = shape.pixels(0, x) ? 0 : inf;
    for (Eigen::Index y = 1; y < h; ++y)
      g(y, x) = shape.pixels(y, x) ? 0 : std::min(inf, g(y - 1, x) + 1);
    for (Eigen::Index y = h - 2; y >= 0; --y)
      if (g(y + 1, x) + 1 < g(y, x)) g(y, x) = g(y + 1, x) + 1;
  }

  // Row pass (Meijster): lower envelope of the parabolas
  // f_i(x) = (x - i)^2 + g(y,i)^2, evaluated with integer arithmetic.
  DistanceMap out;
  out.d2.resize(h, w);
  std::vector<Eigen::Index> s(static_cast<std::size_t>(w));  // parabola sites
  std::vector<Eigen::Index> t(static_cast<std::size_t>(w));  // takeover positions
  for (Eigen::Index y = 0; y < h; ++y) {
    const auto gsq = [&](Eigen::Index i) { return g(y, i) * g(y, i); };
    const auto f = [&](Eigen::Index x, Eigen::Index i) {
      return (x - i) * (x - i) + gsq(i);
    };
    // First x where parabola u beats parabola i (i < u). The while loop below
    // guarantees a nonnegative numerator, so truncation equals floor.
    const auto sep = [&](Eigen::Index i, Eigen::Index u) {
      return (u * u - i * i + gsq(u) - gsq(i)) / (2 * (u - i));
    };

    Eigen::Index q = 0;
    s[0] = 0;
    t[0] = 0;
    for (Eigen::Index u = 1; u < w; ++u) {
      while (q >= 0 && f(t[static_cast<std::size_t>(q)], s[static_cast<std::size_t>(q)]) >
                           f(t[static_cast<std::size_t>(q)], u))
        --q;
      if (q < 0) {
        q = 0;
        s[0] = u;
        t[0] = 0;
      } else {
        const Eigen::Index pos = 1 + sep(s[static_cast<std::size_t>(q)], u);
        if (pos < w) {
          ++q;
          s[static_cast<std::size_t>(q)] = u;
          t[static_cast<std::size_t>(q)] = pos;
        }
      }
    }
    for (Eigen::Index x = w - 1; x >= 0; --x) {
      out.d2(y, x) = f(x, s[static_cast<std::size_t>(q)]);
      if (x == t[static_cast<std::size_t>(q)]) --q;
    }
  }
  return out;
}

DistanceMap brute_force_edt(const BinaryShape& shape) {
  require_foreground(shape);
  const Eigen::Index w = shape.width();
  const Eigen::Index h = shape.height();

  std::vector<std::pair<Eigen::Index, Eigen::Index>> fg;
  fg.reserve(static_cast<std::size_t>(shape.foreground_count()));
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x)
      if (shape.pixels(y, x)) fg.emplace_back(y, x);

  DistanceMap out;
  out.d2.resize(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (shape.pixels(y, x)) {
        out.d2(y, x) = 0;
        continue;
      }
      std::int64_t best = INT64_MAX;
      for (const auto& [fy, fx] : fg) {
        const std::int64_t dy = y - fy;
        const std::int64_t dx = x - fx;
        best = std::min(best, dy * dy + dx * dx);
      }
      out.d2(y, x) = best;
    }
  }
  return out;
}

}  // namespace fracdim
