#pragma once

// Dense polynomials in F_q[t] with coefficients stored as field codes,
// index i holding the coefficient of t^i.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ffdisc/finite_field.hpp"

namespace ffdisc {

class Poly {
 public:
  explicit Poly(FieldPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_) throw DomainError("null field context");
  }

  Poly(FieldPtr ctx, std::vector<std::uint32_t> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw DomainError("null field context");
    for (auto v : c_) ctx_->check_code(v);
    normalize();
  }

  static Poly constant(FieldPtr ctx, std::uint32_t code) { return {std::move(ctx), {code}}; }

  static Poly monomial(FieldPtr ctx, std::size_t degree, std::uint32_t code = 1) {
    std::vector<std::uint32_t> c(degree + 1, 0);
    c[degree] = code;
    return {std::move(ctx), std::move(c)};
  }

  const FieldPtr& ctx() const { return ctx_; }
  const FieldCtx& field() const { return *ctx_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }

  std::uint32_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  // |A| = q^deg(A), |0| = 0. Throws PrecisionError when it does not fit 64 bits.
  std::uint64_t norm() const {
    if (is_zero()) return 0;
    std::uint64_t v = 1;
    for (int i = 0; i < degree(); ++i) {
      if (v > std::numeric_limits<std::uint64_t>::max() / ctx_->q())
        throw PrecisionError("polynomial norm exceeds 64 bits");
      v *= ctx_->q();
    }
    return v;
  }

  Poly& operator+=(const Poly& o) {
    same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = ctx_->add(c_[i], o.c_[i]);
    normalize();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = ctx_->sub(c_[i], o.c_[i]);
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.same(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ctx_);
    const FieldCtx& f = *a.ctx_;
    std::vector<std::uint32_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return {a.ctx_, std::move(r)};
  }

  Poly scaled(std::uint32_t code) const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = ctx_->mul(c_[i], code);
    return {ctx_, std::move(r)};
  }

  Poly operator-() const { return scaled(ctx_->neg(1)); }

  friend bool operator==(const Poly& a, const Poly& b) { return *a.ctx_ == *b.ctx_ && a.c_ == b.c_; }

  void same(const Poly& o) const {
    if (!(*ctx_ == *o.ctx_))
      throw DomainError("polynomial field mismatch: q=" + std::to_string(ctx_->q()) + " vs q=" +
                        std::to_string(o.ctx_->q()));
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  FieldPtr ctx_;
  std::vector<std::uint32_t> c_;
};

// Euclidean division: a = quot * b + rem with deg(rem) < deg(b).
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  a.same(b);
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const FieldCtx& f = a.field();
  if (a.degree() < b.degree()) return {Poly(a.ctx()), a};
  std::vector<std::uint32_t> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<std::uint32_t> quot(r.size() - db, 0);
  const std::uint32_t lead_inv = f.inv(bc.back());
  for (std::size_t s = r.size() - db; s-- > 0;) {
    const std::uint32_t top = r[s + db];
    if (top == 0) continue;
    const std::uint32_t factor = f.mul(top, lead_inv);
    quot[s] = factor;
    for (std::size_t i = 0; i <= db; ++i) r[s + i] = f.sub(r[s + i], f.mul(factor, bc[i]));
  }
  r.resize(db);
  return {Poly(a.ctx(), std::move(quot)), Poly(a.ctx(), std::move(r))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

inline Poly pow(const Poly& base, unsigned e) {
  Poly r = Poly::constant(base.ctx(), 1);
  Poly b = base;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

// n(t): base-q digits of n mapped to coefficients through the code bijection.
inline Poly associated_poly(std::uint64_t n, const FieldPtr& ctx) {
  std::vector<std::uint32_t> c;
  const std::uint32_t q = ctx->q();
  while (n) {
    c.push_back(static_cast<std::uint32_t>(n % q));
    n /= q;
  }
  return {ctx, std::move(c)};
}

// Inverse of associated_poly. Throws PrecisionError past 64 bits.
inline std::uint64_t poly_to_nat(const Poly& a) {
  const std::uint64_t q = a.field().q();
  std::uint64_t n = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (n > (std::numeric_limits<std::uint64_t>::max() - c[i]) / q)
      throw PrecisionError("polynomial does not map to a 64-bit natural number");
    n = n * q + c[i];
  }
  return n;
}

// a = sum_i digits[i] * base^i, deg(digits[i]) < deg(base), least significant
// digit first, no trailing zero digits.
struct DigitExpansion {
  Poly base;
  std::vector<Poly> digits;

  Poly reconstruct() const {
    Poly acc(base.ctx());
    for (std::size_t i = digits.size(); i-- > 0;) acc = acc * base + digits[i];
    return acc;
  }
};

inline DigitExpansion base_expand(const Poly& a, const Poly& base) {
  a.same(base);
  if (base.degree() < 1)
    throw DomainError("base polynomial must have degree >= 1, got degree " + std::to_string(base.degree()));
  DigitExpansion out{base, {}};
  Poly rest = a;
  while (!rest.is_zero()) {
    auto [q, r] = divrem(rest, base);
    out.digits.push_back(std::move(r));
    rest = std::move(q);
  }
  return out;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& p) {
  if (p.degree() < 1)
    throw DomainError("irreducibility is defined for polynomials of degree >= 1");
  const FieldPtr& ctx = p.ctx();
  const std::uint32_t q = ctx->q();
  const int half = p.degree() / 2;
  for (int dg = 1; dg <= half; ++dg) {
    std::uint64_t count = 1;
    for (int i = 0; i < dg; ++i) count *= q;
    for (std::uint64_t m = 0; m < count; ++m) {
      std::vector<std::uint32_t> c(dg + 1);
      std::uint64_t r = m;
      for (int i = 0; i < dg; ++i) {
        c[i] = static_cast<std::uint32_t>(r % q);
        r /= q;
      }
      c[dg] = 1;
      if ((p % Poly(ctx, std::move(c))).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace ffdisc
