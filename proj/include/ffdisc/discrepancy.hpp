#pragma once

// Exact star discrepancy of finite point sets in [0,1)^d, d = 1, 2.
//
// Coordinates are integers over a shared denominator `den`. Boxes are
// half-open, [0,x) x [0,y). For a finite set the supremum over boxes is
// attained in the limit at critical corners built from the point
// coordinates and 1: a box closing on points from above gives
// count(<=)/N - x*y, and a box opening toward a corner gives
// x*y - count(<)/N.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ffdisc/errors.hpp"
#include "ffdisc/fixed_point.hpp"
#include "ffdisc/parallel.hpp"

namespace ffdisc {

using u128 = unsigned __int128;
using i128 = __int128;

inline u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

// A non-negative exact rational in lowest terms.
struct ExactRatio {
  u128 num = 0;
  u128 den = 1;

  static ExactRatio make(u128 num, u128 den) {
    if (den == 0) throw DomainError("zero denominator");
    const u128 g = gcd_u128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
    return {num, den};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const ExactRatio&, const ExactRatio&) = default;
};

struct PointSet2D {
  std::vector<std::array<std::uint64_t, 2>> points;
  std::uint64_t den = 1;

  std::size_t size() const { return points.size(); }
};

inline PointSet2D to_point_set(std::span<const Point2D> pts) {
  PointSet2D out;
  if (pts.empty()) return out;
  const unsigned e = pts.front().x.log_den;
  const std::uint32_t base = pts.front().x.base;
  out.den = checked_pow(base, e);
  out.points.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.x.log_den != e || p.y.log_den != e || p.x.base != base || p.y.base != base)
      throw DomainError("point set coordinates do not share a denominator");
    out.points.push_back({p.x.num, p.y.num});
  }
  return out;
}

// Number of points with x < bx and y < by (numerators over pts.den).
inline std::size_t box_count(std::uint64_t bx, std::uint64_t by, const PointSet2D& pts) {
  std::size_t c = 0;
  for (const auto& p : pts.points)
    if (p[0] < bx && p[1] < by) ++c;
  return c;
}

// D* = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)| over the sorted coordinates.
inline ExactRatio star_disc_1d(std::span<const std::uint64_t> xs, std::uint64_t den) {
  if (xs.empty()) throw DomainError("star discrepancy of an empty set");
  std::vector<std::uint64_t> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const u128 n = s.size();
  u128 worst = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= den) throw DomainError("coordinate outside [0,1)");
    const u128 lhs = 2 * n * s[i];
    const u128 rhs = u128{2 * i + 1} * den;
    worst = std::max(worst, lhs > rhs ? lhs - rhs : rhs - lhs);
  }
  return ExactRatio::make(worst + den, 2 * n * den);
}

struct DiscrepancyReport {
  std::size_t n = 0;
  ExactRatio d_star;
  // Upper corner of the extremal box, numerators over `den`; a coordinate
  // equal to den stands for 1.
  std::uint64_t witness_x = 0;
  std::uint64_t witness_y = 0;
  std::uint64_t den = 1;
  bool witness_closed = false;  // closing on points (count <=) vs opening (count <)
  double elapsed_seconds = 0;
};

namespace detail {

inline void check_point_set(const PointSet2D& pts) {
  if (pts.points.empty()) throw DomainError("star discrepancy of an empty set");
  if (pts.den == 0 || pts.den > (std::uint64_t{1} << 40))
    throw PrecisionError("point set denominator must be in [1, 2^40]");
  if (pts.points.size() > (std::size_t{1} << 31)) throw PrecisionError("point set too large");
  for (const auto& p : pts.points)
    if (p[0] >= pts.den || p[1] >= pts.den) throw DomainError("coordinate outside [0,1)");
}

struct Extremum {
  i128 value = -1;
  std::size_t row = 0;
  std::size_t col = 0;  // == number of distinct y values for the corner y = 1
  bool closed = false;
  bool valid = false;
};

}  // namespace detail

// Exact D*_N in O(N^2) after sorting. Rows of the critical grid are split
// across threads; the extremal corner is the first one in (x, y, open before
// closed) order attaining the maximum, independent of the thread count.
inline DiscrepancyReport star_disc_2d(const PointSet2D& pts, unsigned threads = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::check_point_set(pts);
  const std::size_t n = pts.points.size();
  const std::uint64_t den = pts.den;

  std::vector<std::array<std::uint64_t, 2>> sorted = pts.points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = sorted[i][1];
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t m = ys.size();
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i)
    rank[i] = static_cast<std::uint32_t>(std::lower_bound(ys.begin(), ys.end(), sorted[i][1]) - ys.begin());
  std::vector<std::uint64_t> xs;
  std::vector<std::size_t> row_start;  // first sorted index with x == xs[r]
  for (std::size_t i = 0; i < n; ++i)
    if (i == 0 || sorted[i][0] != sorted[i - 1][0]) {
      xs.push_back(sorted[i][0]);
      row_start.push_back(i);
    }
  const std::size_t rows = xs.size();
  row_start.push_back(n);

  const i128 k2 = static_cast<i128>(den) * den;
  const i128 nn = static_cast<i128>(n);

  // Row `rows` is the corner x = 1, which only bounds boxes from outside.
  auto scan = [&](std::size_t r0, std::size_t r1) {
    detail::Extremum best;
    std::vector<std::uint32_t> cnt(m, 0), at(m, 0);
    for (std::size_t i = 0; i < row_start[r0]; ++i) ++cnt[rank[i]];
    auto offer = [&](i128 v, std::size_t r, std::size_t c, bool closed) {
      if (!best.valid || v > best.value) best = {v, r, c, closed, true};
    };
    for (std::size_t r = r0; r < r1; ++r) {
      const bool inner = r < rows;
      const i128 a_n = static_cast<i128>(inner ? xs[r] : den) * nn;
      if (inner)
        for (std::size_t i = row_start[r]; i < row_start[r + 1]; ++i) ++at[rank[i]];
      i128 below = 0;  // points with x < a and y < ys[j]
      i128 with_at = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const i128 ab_n = a_n * static_cast<i128>(ys[j]);
        offer(ab_n - below * k2, r, j, false);
        if (inner) {
          with_at += at[j];
          offer((below + cnt[j] + with_at) * k2 - ab_n, r, j, true);
        }
        below += cnt[j];
      }
      offer(a_n * static_cast<i128>(den) - below * k2, r, m, false);
      if (inner)
        for (std::size_t i = row_start[r]; i < row_start[r + 1]; ++i) {
          ++cnt[rank[i]];
          at[rank[i]] = 0;
        }
    }
    return best;
  };

  const std::size_t total_rows = rows + 1;
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, total_rows)));
  std::vector<detail::Extremum> partial(workers);
  parallel_chunks(0, workers, workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t w = lo; w < hi; ++w)
      partial[w] = scan(total_rows * w / workers, total_rows * (w + 1) / workers);
  });
  detail::Extremum best;
  for (const auto& e : partial)
    if (e.valid && (!best.valid || e.value > best.value)) best = e;

  DiscrepancyReport rep;
  rep.n = n;
  rep.den = den;
  rep.d_star = ExactRatio::make(static_cast<u128>(best.value), static_cast<u128>(nn * k2));
  rep.witness_x = best.row < rows ? xs[best.row] : den;
  rep.witness_y = best.col < m ? ys[best.col] : den;
  rep.witness_closed = best.closed;
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Direct enumeration of every corner in ({x_i} u {1}) x ({y_i} u {1}) with
// both the closed and the strict count, O(N^3). Independent of star_disc_2d.
inline ExactRatio star_disc_2d_bruteforce(const PointSet2D& pts) {
  if (pts.points.empty()) throw DomainError("star discrepancy of an empty set");
  if (pts.points.size() > 64) throw DomainError("brute-force discrepancy is limited to N <= 64");
  detail::check_point_set(pts);
  std::vector<std::uint64_t> cx{pts.den}, cy{pts.den};
  for (const auto& p : pts.points) {
    cx.push_back(p[0]);
    cy.push_back(p[1]);
  }
  const u128 n = pts.points.size();
  const u128 k2 = u128{pts.den} * pts.den;
  u128 best = 0;
  for (const auto x : cx)
    for (const auto y : cy) {
      u128 closed = 0, strict = 0;
      for (const auto& p : pts.points) {
        closed += (p[0] <= x && p[1] <= y);
        strict += (p[0] < x && p[1] < y);
      }
      const u128 vol = u128{x} * y * n;
      if (closed * k2 > vol) best = std::max(best, closed * k2 - vol);
      if (vol > strict * k2) best = std::max(best, vol - strict * k2);
    }
  return ExactRatio::make(best, n * k2);
}

struct ScalingRow {
  std::uint64_t n = 0;
  ExactRatio d_star;
  double n_dstar = 0;  // N * D*_N
  double ratio = 0;    // N * D*_N / log(N)^dim
};

inline ScalingRow scaling_row(std::uint64_t n, const ExactRatio& d, unsigned dim) {
  const double nd = static_cast<double>(n) * d.to_double();
  const double lg = std::log(static_cast<double>(n));
  return {n, d, nd, nd / std::pow(lg, static_cast<double>(dim))};
}

// One row per N: exact D*_N of the first N points, N D*_N and N D*_N / log^2 N.
inline std::vector<ScalingRow> scaling_table(const std::function<PointSet2D(std::uint64_t)>& points_for,
                                             std::span<const std::uint64_t> counts, unsigned threads = 1) {
  std::vector<ScalingRow> rows;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i && counts[i] <= counts[i - 1]) throw DomainError("scaling counts must be ascending");
    rows.push_back(scaling_row(counts[i], star_disc_2d(points_for(counts[i]), threads).d_star, 2));
  }
  return rows;
}

// One-dimensional variant; points_for returns (numerators, denominator).
inline std::vector<ScalingRow> scaling_table_1d(
    const std::function<std::pair<std::vector<std::uint64_t>, std::uint64_t>(std::uint64_t)>& points_for,
    std::span<const std::uint64_t> counts) {
  std::vector<ScalingRow> rows;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i && counts[i] <= counts[i - 1]) throw DomainError("scaling counts must be ascending");
    const auto [xs, den] = points_for(counts[i]);
    rows.push_back(scaling_row(counts[i], star_disc_1d(xs, den), 1));
  }
  return rows;
}

}  // namespace ffdisc
