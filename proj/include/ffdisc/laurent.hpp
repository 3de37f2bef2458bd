#pragma once

// Truncated Laurent series in F_q((1/t)).
//
// A LaurentPrefix stores the coefficients of t^high, t^(high-1), ...,
// t^precision. Coefficients above `high` are zero. Coefficients below
// `precision` are zero when the prefix is exact and unknown otherwise;
// reading an unknown coefficient throws PrecisionError.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffdisc/fixed_point.hpp"
#include "ffdisc/poly.hpp"

namespace ffdisc {

class LaurentPrefix {
 public:
  // coeffs[k] is the coefficient of t^(high - k).
  LaurentPrefix(FieldPtr ctx, int high, std::vector<std::uint32_t> coeffs, bool exact)
      : ctx_(std::move(ctx)), high_(high), c_(std::move(coeffs)), exact_(exact) {
    if (!ctx_) throw DomainError("null field context");
    for (auto v : c_) ctx_->check_code(v);
  }

  // sum_{i>=1} a[i-1] t^-i.
  static LaurentPrefix fractional(FieldPtr ctx, std::vector<std::uint32_t> a, bool exact = false) {
    return {std::move(ctx), -1, std::move(a), exact};
  }

  static LaurentPrefix from_poly(const Poly& p) {
    std::vector<std::uint32_t> c(p.coeffs().rbegin(), p.coeffs().rend());
    if (c.empty()) return {p.ctx(), -1, {}, true};
    return {p.ctx(), p.degree(), std::move(c), true};
  }

  const FieldPtr& ctx() const { return ctx_; }
  const FieldCtx& field() const { return *ctx_; }
  int high() const { return high_; }
  int precision() const { return high_ - static_cast<int>(c_.size()) + 1; }
  bool exact() const { return exact_; }
  std::size_t size() const { return c_.size(); }

  bool known(int e) const { return e >= precision() || exact_; }

  std::uint32_t coeff(int e) const {
    if (e > high_) return 0;
    if (e < precision()) {
      if (exact_) return 0;
      throw PrecisionError("coefficient of t^" + std::to_string(e) +
                           " lies below the known window (precision t^" + std::to_string(precision()) +
                           ")");
    }
    return c_[static_cast<std::size_t>(high_ - e)];
  }

  // Exponent of the leading nonzero coefficient within the window; nullopt
  // when the window is all zero.
  std::optional<int> degree() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return high_ - static_cast<int>(k);
    return std::nullopt;
  }

  bool is_zero() const { return exact_ && !degree(); }

  // Codes of a_1..a_count where the fractional part is sum a_i t^-i.
  std::vector<std::uint32_t> fractional_coeffs(std::size_t count) const {
    std::vector<std::uint32_t> a(count);
    for (std::size_t i = 0; i < count; ++i) a[i] = coeff(-static_cast<int>(i) - 1);
    return a;
  }

  // Drops every coefficient below t^lowest; the result is inexact whenever
  // that discards part of the window.
  LaurentPrefix truncated(int lowest) const {
    if (lowest <= precision()) return *this;
    if (lowest > high_) return {ctx_, lowest - 1, {}, false};
    std::vector<std::uint32_t> c;
    for (int e = high_; e >= lowest; --e) c.push_back(coeff(e));
    return {ctx_, high_, std::move(c), false};
  }

  friend bool operator==(const LaurentPrefix& a, const LaurentPrefix& b) {
    return *a.ctx_ == *b.ctx_ && a.high_ == b.high_ && a.c_ == b.c_ && a.exact_ == b.exact_;
  }

 private:
  FieldPtr ctx_;
  int high_;
  std::vector<std::uint32_t> c_;
  bool exact_;
};

// <X>: the terms with negative exponent. The precision is unchanged.
inline LaurentPrefix frac_part(const LaurentPrefix& x) {
  const int prec = x.precision();
  std::vector<std::uint32_t> c;
  for (int e = -1; e >= prec; --e) c.push_back(x.coeff(e));
  return {x.ctx(), -1, std::move(c), x.exact()};
}

// Exact product of a polynomial and a series on the window the inputs
// determine. For an inexact series the lowest known exponent rises by deg(n).
inline LaurentPrefix mul_poly(const Poly& n, const LaurentPrefix& x) {
  if (!(n.field() == x.field())) throw DomainError("mul_poly: field mismatch");
  if (n.is_zero()) return {x.ctx(), -1, {}, true};
  const int dn = n.degree();
  const int high = x.high() + dn;
  const int low = x.exact() ? x.precision() : x.precision() + dn;
  const FieldCtx& f = x.field();
  std::vector<std::uint32_t> c;
  c.reserve(static_cast<std::size_t>(std::max(0, high - low + 1)));
  for (int e = high; e >= low; --e) {
    std::uint32_t s = 0;
    for (int j = 0; j <= dn; ++j) {
      const std::uint32_t nj = n[static_cast<std::size_t>(j)];
      if (nj == 0) continue;
      s = f.add(s, f.mul(nj, x.coeff(e - j)));
    }
    c.push_back(s);
  }
  return {x.ctx(), high, std::move(c), x.exact()};
}

// Product of two series, computed no lower than t^lowest.
inline LaurentPrefix mul_series(const LaurentPrefix& x, const LaurentPrefix& y, int lowest) {
  if (!(x.field() == y.field())) throw DomainError("mul_series: field mismatch");
  if (x.is_zero() || y.is_zero()) return {x.ctx(), -1, {}, true};
  const auto dx = x.degree();
  const auto dy = y.degree();
  if (!dx || !dy) throw PrecisionError("mul_series: leading term of a factor is unknown");
  int low = lowest;
  bool exact = x.exact() && y.exact();
  if (exact) {
    const int exact_low = x.precision() + y.precision();
    if (exact_low >= lowest)
      low = exact_low;
    else
      exact = false;
  }
  if (!x.exact()) low = std::max(low, x.precision() + *dy);
  if (!y.exact()) low = std::max(low, y.precision() + *dx);
  const int high = *dx + *dy;
  const FieldCtx& f = x.field();
  std::vector<std::uint32_t> c;
  for (int e = high; e >= low; --e) {
    std::uint32_t s = 0;
    // a runs over exponents of x with x_a possibly nonzero and y_{e-a} too.
    for (int a = *dx; e - a <= *dy; --a) {
      const std::uint32_t xa = x.coeff(a);
      if (xa == 0) continue;
      s = f.add(s, f.mul(xa, y.coeff(e - a)));
    }
    c.push_back(s);
  }
  return {x.ctx(), high, std::move(c), exact};
}

// 1/X by long division, computed down to t^lowest (or as far as the known
// window of X allows).
inline LaurentPrefix reciprocal(const LaurentPrefix& x, int lowest) {
  const auto h = x.degree();
  if (!h) throw DomainError("reciprocal of a series with no known nonzero term");
  const FieldCtx& f = x.field();
  const std::uint32_t c0_inv = f.inv(x.coeff(*h));
  int last_m = -*h - lowest;  // d_m sits at exponent -h - m
  if (!x.exact()) last_m = std::min(last_m, *h - x.precision());
  if (last_m < 0) throw PrecisionError("reciprocal: requested window above the leading term");
  std::vector<std::uint32_t> d(static_cast<std::size_t>(last_m) + 1, 0);
  d[0] = c0_inv;
  for (int m = 1; m <= last_m; ++m) {
    std::uint32_t s = 0;
    for (int k = 1; k <= m; ++k) {
      const std::uint32_t ck = x.coeff(*h - k);
      if (ck == 0) continue;
      s = f.add(s, f.mul(ck, d[static_cast<std::size_t>(m - k)]));
    }
    d[static_cast<std::size_t>(m)] = f.neg(f.mul(c0_inv, s));
  }
  return {x.ctx(), -*h, std::move(d), false};
}

// ev_q of a purely fractional series: sum E_q(a_i) q^-i, i = 1..digits.
inline FixedPoint ev_real(const LaurentPrefix& x, unsigned digits) {
  if (const auto h = x.degree(); h && *h >= 0)
    throw DomainError("ev_real: series has a nonzero term of exponent " + std::to_string(*h) + " >= 0");
  const std::uint64_t q = x.field().q();
  std::uint64_t num = 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / q;
  for (unsigned i = 1; i <= digits; ++i) {
    if (num > limit) throw PrecisionError("ev_real: value exceeds 64-bit fixed point");
    num = num * q + x.coeff(-static_cast<int>(i));
  }
  checked_pow(q, digits);
  return {num, digits, static_cast<std::uint32_t>(q)};
}

// Uses every coefficient of the window: denominator q^|precision|.
inline FixedPoint ev_real(const LaurentPrefix& x) {
  const int prec = x.precision();
  return ev_real(x, prec < 0 ? static_cast<unsigned>(-prec) : 0u);
}

// sum_i a_i P^-i, computed exactly down to t^-depth. The caller vouches for P;
// `induce` is the checked entry point.
inline LaurentPrefix compose_inverse(const LaurentPrefix& theta, const Poly& p, unsigned depth) {
  if (!(theta.field() == p.field())) throw DomainError("induce: field mismatch");
  if (p.degree() < 1) throw DomainError("induce: P must have degree >= 1");
  if (const auto h = theta.degree(); h && *h >= 0)
    throw DomainError("induce: Theta must be purely fractional");
  const unsigned d = static_cast<unsigned>(p.degree());
  const unsigned needed = depth / d;
  if (!theta.exact() && theta.precision() > -static_cast<int>(needed))
    throw PrecisionError("induce: depth " + std::to_string(depth) + " needs " + std::to_string(needed) +
                         " coefficients of Theta, only " + std::to_string(-theta.precision()) +
                         " supplied");
  const int lowest = -static_cast<int>(depth);
  const FieldCtx& f = theta.field();
  std::vector<std::uint32_t> acc(depth, 0);  // acc[k] is the coefficient of t^-(k+1)
  if (needed == 0) return LaurentPrefix::fractional(theta.ctx(), std::move(acc));
  const LaurentPrefix inv_p = reciprocal(LaurentPrefix::from_poly(p), lowest);
  LaurentPrefix power = inv_p;
  for (unsigned i = 1; i <= needed; ++i) {
    const std::uint32_t ai = theta.coeff(-static_cast<int>(i));
    if (ai != 0) {
      for (int e = std::min(-1, power.high()); e >= lowest; --e)
        acc[static_cast<std::size_t>(-e - 1)] = f.add(acc[static_cast<std::size_t>(-e - 1)], f.mul(ai, power.coeff(e)));
    }
    if (i < needed) power = mul_series(power, inv_p, lowest);
  }
  return LaurentPrefix::fractional(theta.ctx(), std::move(acc));
}

// Theta(P) = sum a_i P^-i for irreducible P, exact down to t^-depth.
inline LaurentPrefix induce(const LaurentPrefix& theta, const Poly& p, unsigned depth) {
  if (p.degree() < 1 || !is_irreducible(p)) throw DomainError("induce: P must be irreducible");
  return compose_inverse(theta, p, depth);
}

inline LaurentPrefix induce(std::span<const std::uint32_t> a, const Poly& p, unsigned depth) {
  return induce(LaurentPrefix::fractional(p.ctx(), {a.begin(), a.end()}), p, depth);
}

// Exhaustive minimum of |N| * |<N P^k Theta>| over nonzero N with
// deg(N) <= max_deg_n and 0 <= k <= max_k.
struct BadnessScan {
  bool zero = false;  // some product has zero fractional part
  int log_min = 0;    // otherwise the minimum is q^log_min
  Poly witness_n;
  unsigned witness_k = 0;
};

inline BadnessScan badness_scan(const LaurentPrefix& theta, const Poly& p, unsigned max_deg_n, unsigned max_k) {
  if (!(theta.field() == p.field())) throw DomainError("badness_scan: field mismatch");
  const FieldPtr& ctx = theta.ctx();
  BadnessScan best{false, 1, Poly(ctx), 0};
  bool have = false;
  const std::uint64_t count = checked_pow(ctx->q(), max_deg_n + 1);
  Poly pk = Poly::constant(ctx, 1);
  for (unsigned k = 0; k <= max_k; ++k) {
    const LaurentPrefix x = mul_poly(pk, theta);
    for (std::uint64_t m = 1; m < count; ++m) {
      const Poly n = associated_poly(m, ctx);
      const LaurentPrefix y = mul_poly(n, x);
      const int low = y.precision();
      std::optional<int> first;
      for (int e = -1; e >= low; --e)
        if (y.coeff(e) != 0) {
          first = e;
          break;
        }
      if (!first) {
        if (!y.exact())
          throw PrecisionError("badness_scan: fractional part of N*P^" + std::to_string(k) +
                               "*Theta vanishes on the known window; supply more coefficients");
        return {true, 0, n, k};
      }
      const int val = n.degree() + *first;
      if (!have || val < best.log_min) {
        best = {false, val, n, k};
        have = true;
      }
    }
    pk = pk * p;
  }
  return best;
}

}  // namespace ffdisc
