#pragma once

// Digital Van der Corput, digital Kronecker and hybrid sequences over F_q,
// plus the classical real-number baselines.
//
// Sequences are indexed from n = 0. All digital coordinates are exact
// rationals with denominator a power of q.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ffdisc/fixed_point.hpp"
#include "ffdisc/laurent.hpp"
#include "ffdisc/parallel.hpp"
#include "ffdisc/poly.hpp"

namespace ffdisc {

// ev_q of a polynomial of degree < d: sum E_q(c_u) q^u.
inline std::uint64_t ev_poly(const Poly& b) {
  std::uint64_t v = 0;
  const auto& c = b.coeffs();
  for (std::size_t u = c.size(); u-- > 0;) v = v * b.field().q() + c[u];
  return v;
}

// V_n(B) = sum_i ev_q(b_i) / |B|^(i+1) over the base-B digits of n(t).
// Denominator q^(d * number of digits).
inline FixedPoint vdc_digital(std::uint64_t n, const Poly& base) {
  const auto exp = base_expand(associated_poly(n, base.ctx()), base);
  const unsigned d = static_cast<unsigned>(base.degree());
  const std::uint64_t block = checked_pow(base.field().q(), d);
  std::uint64_t num = 0;
  for (const Poly& digit : exp.digits) num = num * block + ev_poly(digit);
  // num now holds b_0 as its most significant block, as required.
  const unsigned log_den = d * static_cast<unsigned>(exp.digits.size());
  checked_pow(base.field().q(), log_den);
  return {num, log_den, base.field().q()};
}

// K_n(Theta) = ev_q(<n(t) Theta>), truncated to denominator q^log_den.
inline FixedPoint kron_digital(std::uint64_t n, const LaurentPrefix& theta, unsigned log_den) {
  const LaurentPrefix prod = mul_poly(associated_poly(n, theta.ctx()), theta);
  return ev_real(frac_part(prod), log_den);
}

// (K_n(Phi), V_n(P)) with both coordinates on denominator q^log_den.
inline Point2D hybrid(std::uint64_t n, const LaurentPrefix& phi, const Poly& p, unsigned log_den) {
  const FixedPoint v = vdc_digital(n, p);
  if (v.log_den > log_den)
    throw PrecisionError("hybrid: Van der Corput coordinate needs denominator exponent " +
                         std::to_string(v.log_den));
  return {n, kron_digital(n, phi, log_den), v.widened(log_den)};
}

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction& a, const Fraction& b) {
    using u128 = unsigned __int128;
    return u128{a.num} * b.den == u128{b.num} * a.den;
  }
};

inline bool operator==(const Fraction& a, const FixedPoint& b) {
  using u128 = unsigned __int128;
  return u128{a.num} * b.den() == u128{b.num} * a.den;
}

// Base-b radical inverse; denominator b^(number of digits of n).
inline Fraction classical_vdc(std::uint64_t n, std::uint64_t b) {
  if (b < 2) throw DomainError("classical_vdc: base must be >= 2");
  Fraction f{0, 1};
  while (n) {
    f.num = f.num * b + n % b;
    f.den *= b;
    n /= b;
  }
  return f;
}

// {n alpha}.
inline double classical_kronecker(std::uint64_t n, double alpha) {
  const long double v = static_cast<long double>(n) * alpha;
  return static_cast<double>(v - std::floor(v));
}

// Precision policy for a run of `count` points with block degree d:
// M = floor(log_{q^d} count), coordinates on denominator q^(d (M + extra)).
struct RunPrecision {
  unsigned blocks = 0;      // M
  unsigned log_den = 0;     // d (M + extra)
  unsigned max_degree = 0;  // largest deg n(t) for n < count
  unsigned series_depth = 0;  // Phi must be exact down to t^-series_depth
  unsigned theta_coeffs = 0;  // coefficients of Theta needed to induce Phi
};

inline RunPrecision run_precision(std::uint64_t count, std::uint32_t q, unsigned d, unsigned extra_blocks) {
  if (d < 1) throw DomainError("block degree must be >= 1");
  if (extra_blocks < 1) throw DomainError("precision-extra must be >= 1 block");
  RunPrecision r;
  const std::uint64_t block = checked_pow(q, d);
  for (std::uint64_t v = count; v >= block; v /= block) ++r.blocks;
  r.log_den = d * (r.blocks + extra_blocks);
  for (std::uint64_t v = count > 0 ? count - 1 : 0; v >= q; v /= q) ++r.max_degree;
  r.series_depth = r.log_den + r.max_degree;
  r.theta_coeffs = r.series_depth / d;
  checked_pow(q, r.log_den);
  return r;
}

// Fast generator for H(Phi, P). Both coordinates are F_q-linear in the
// coefficient vector of n(t), so each is a sum of precomputed digit columns.
class HybridGenerator {
 public:
  HybridGenerator(const LaurentPrefix& phi, const Poly& p, std::uint64_t count, unsigned extra_blocks = 4)
      : ctx_(p.ctx()), count_(count) {
    if (!(phi.field() == p.field())) throw DomainError("hybrid: field mismatch");
    if (p.degree() < 1) throw DomainError("hybrid: P must have degree >= 1");
    const unsigned d = static_cast<unsigned>(p.degree());
    prec_ = run_precision(count, ctx_->q(), d, extra_blocks);
    const unsigned e = prec_.log_den;
    const unsigned cols = prec_.max_degree + 1;
    kron_.assign(std::size_t{cols} * e, 0);
    vdc_.assign(std::size_t{cols} * e, 0);
    for (unsigned j = 0; j < cols; ++j) {
      // <t^j Phi> has coefficient phi_{i+j} at t^-i.
      for (unsigned i = 1; i <= e; ++i) kron_[j * e + (i - 1)] = phi.coeff(-static_cast<int>(i + j));
      const auto exp = base_expand(Poly::monomial(ctx_, j), p);
      for (std::size_t s = 0; s < exp.digits.size(); ++s) {
        const Poly& b = exp.digits[s];
        for (int u = 0; u <= b.degree(); ++u) {
          const unsigned pos = d * static_cast<unsigned>(s + 1) - static_cast<unsigned>(u);
          if (pos > e) throw PrecisionError("hybrid: Van der Corput digit beyond denominator");
          vdc_[j * e + (pos - 1)] = b[static_cast<std::size_t>(u)];
        }
      }
    }
    pow_.resize(e);
    std::uint64_t w = 1;
    for (unsigned i = e; i-- > 0;) {
      pow_[i] = w;
      if (i) w *= ctx_->q();
    }
  }

  const RunPrecision& precision() const { return prec_; }
  unsigned log_den() const { return prec_.log_den; }
  std::uint64_t count() const { return count_; }

  Point2D operator()(std::uint64_t n) const {
    Point2D pt;
    fill(n, pt);
    return pt;
  }

  // Points [begin, end) into out (out.size() == end - begin).
  void generate(std::uint64_t begin, std::uint64_t end, std::span<Point2D> out) const {
    for (std::uint64_t n = begin; n < end; ++n) fill(n, out[n - begin]);
  }

  std::vector<Point2D> generate_all(unsigned threads = 1) const {
    std::vector<Point2D> pts(count_);
    parallel_chunks(0, count_, threads, [&](std::size_t lo, std::size_t hi) {
      generate(lo, hi, std::span<Point2D>(pts).subspan(lo, hi - lo));
    });
    return pts;
  }

 private:
  void fill(std::uint64_t n, Point2D& pt) const {
    const unsigned e = prec_.log_den;
    const std::uint32_t q = ctx_->q();
    std::uint32_t digits[64];
    unsigned nd = 0;
    for (std::uint64_t v = n; v; v /= q) digits[nd++] = static_cast<std::uint32_t>(v % q);
    if (nd > prec_.max_degree + 1)
      throw PrecisionError("hybrid: index " + std::to_string(n) + " exceeds the generator's degree bound");
    std::uint32_t xs[64] = {};
    std::uint32_t ys[64] = {};
    if (ctx_->is_prime_field()) {
      // Sums stay below 2^32: at most 64 terms of (p-1)^2 < 2^26.
      for (unsigned j = 0; j < nd; ++j) {
        const std::uint32_t c = digits[j];
        if (!c) continue;
        const std::uint32_t* kr = &kron_[std::size_t{j} * e];
        const std::uint32_t* vr = &vdc_[std::size_t{j} * e];
        for (unsigned i = 0; i < e; ++i) {
          xs[i] += c * kr[i];
          ys[i] += c * vr[i];
        }
      }
      for (unsigned i = 0; i < e; ++i) {
        xs[i] %= q;
        ys[i] %= q;
      }
    } else {
      const FieldCtx& f = *ctx_;
      for (unsigned j = 0; j < nd; ++j) {
        const std::uint32_t c = digits[j];
        if (!c) continue;
        for (unsigned i = 0; i < e; ++i) {
          xs[i] = f.add(xs[i], f.mul(c, kron_[std::size_t{j} * e + i]));
          ys[i] = f.add(ys[i], f.mul(c, vdc_[std::size_t{j} * e + i]));
        }
      }
    }
    std::uint64_t xn = 0, yn = 0;
    for (unsigned i = 0; i < e; ++i) {
      xn += xs[i] * pow_[i];
      yn += ys[i] * pow_[i];
    }
    pt.index = n;
    pt.x = {xn, e, q};
    pt.y = {yn, e, q};
  }

  FieldPtr ctx_;
  std::uint64_t count_;
  RunPrecision prec_;
  std::vector<std::uint32_t> kron_;  // [j][i]: digit i+1 of <t^j Phi>
  std::vector<std::uint32_t> vdc_;   // [j][i]: digit i+1 of V(t^j)
  std::vector<std::uint64_t> pow_;   // q^(e-1-i)
};

}  // namespace ffdisc
