#pragma once

// Arithmetic in F_q = F_p[x]/(m(x)), q = p^n <= 2^16.
//
// Elements are handled as integer codes: an element with representative
// f(x) = f_0 + f_1 x + ... + f_{n-1} x^{n-1} has code f(p), i.e. the base-p
// number with digits f_0 (least significant) ... f_{n-1}. The zero element
// has code 0 and the identity has code 1 in every field.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffdisc/errors.hpp"

namespace ffdisc {

class FieldCtx;
class FieldElem;
using FieldPtr = std::shared_ptr<const FieldCtx>;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

namespace detail {

inline bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Polynomials over F_p as ascending coefficient vectors, used only while
// building the extension field tables.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic here.
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
    trim(a);
  }
  return a;
}

inline bool prime_poly_irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dg; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      PrimePoly g(dg + 1);
      std::uint64_t r = m;
      for (std::size_t i = 0; i < dg; ++i) {
        g[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      g[dg] = 1;
      if (prime_poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Smallest monic irreducible of degree n, comparing coefficient lists
// lexicographically starting from the constant term.
inline PrimePoly canonical_modulus(std::uint32_t p, std::uint32_t n) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    PrimePoly f(n + 1);
    std::uint64_t r = m;
    // c_0 is the most significant digit of the enumeration index.
    for (std::uint32_t i = 0; i < n; ++i) {
      f[n - 1 - i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    f[n] = 1;
    if (f[0] == 0) continue;
    if (prime_poly_irreducible(f, p)) return f;
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for n >= 1
}

}  // namespace detail

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  // Builds F_{p^n}. Throws DomainError for composite p, n < 1 or q > 2^16.
  static FieldPtr make(std::uint32_t p, std::uint32_t n = 1) {
    if (!detail::is_prime(p))
      throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (n < 1) throw DomainError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      q *= p;
      if (q > kMaxFieldOrder)
        throw DomainError("field order " + std::to_string(p) + "^" + std::to_string(n) +
                          " exceeds the supported maximum 2^16");
    }
    return std::shared_ptr<FieldCtx>(new FieldCtx(p, n, static_cast<std::uint32_t>(q)));
  }

  // Builds F_q from its order; q must be a prime power.
  static FieldPtr of_order(std::uint32_t q) {
    if (q < 2) throw DomainError("field order must be a prime power >= 2, got " + std::to_string(q));
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t n = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++n;
    }
    if (r != 1) throw DomainError("field order " + std::to_string(q) + " is not a prime power");
    return make(p, n);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return n_ == 1; }

  // Ascending coefficients of the defining polynomial; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (n_ == 1) {
      const std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return digitwise(a, b, [this](std::uint32_t x, std::uint32_t y) { return (x + y) % p_; });
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    return digitwise(a, 0, [this](std::uint32_t x, std::uint32_t) { return (p_ - x) % p_; });
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (n_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("inversion of the zero element");
    if (n_ == 1) {
      // a^(p-2) mod p
      std::uint64_t r = 1, b = a, e = p_ - 2;
      while (e) {
        if (e & 1) r = r * b % p_;
        b = b * b % p_;
        e >>= 1;
      }
      return static_cast<std::uint32_t>(r);
    }
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  // Base-p digits of the representative polynomial, ascending, length n.
  std::vector<std::uint32_t> representative(std::uint32_t code) const {
    check_code(code);
    std::vector<std::uint32_t> f(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      f[i] = code % p_;
      code /= p_;
    }
    return f;
  }

  std::uint32_t from_representative(std::span<const std::uint32_t> f) const {
    if (f.size() > n_) throw DomainError("representative has degree >= n");
    std::uint32_t code = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
      if (f[i] >= p_) throw DomainError("representative coefficient out of range");
      code = code * p_ + f[i];
    }
    return code;
  }

  void check_code(std::uint32_t code) const {
    if (code >= q_)
      throw DomainError("field code " + std::to_string(code) + " out of range for q=" +
                        std::to_string(q_));
  }

  FieldElem elem(std::uint32_t code) const;

  // Contexts with equal (p, n) share the canonical modulus, so they are the
  // same field.
  friend bool operator==(const FieldCtx& a, const FieldCtx& b) { return a.p_ == b.p_ && a.n_ == b.n_; }

 private:
  FieldCtx(std::uint32_t p, std::uint32_t n, std::uint32_t q) : p_(p), n_(n), q_(q) {
    if (n == 1) return;
    modulus_ = detail::canonical_modulus(p, n);
    build_tables();
  }

  template <class Op>
  std::uint32_t digitwise(std::uint32_t a, std::uint32_t b, Op op) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
      out += op(a % p_, b % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    const auto fa = representative(a);
    const auto fb = representative(b);
    detail::PrimePoly prod(2 * n_ - 1, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p_;
    const auto r = detail::prime_poly_mod(prod, modulus_, p_);
    return from_representative(r);
  }

  void build_tables() {
    if (q_ <= 256) {
      add_table_.resize(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b)
          add_table_[a * q_ + b] =
              digitwise(a, b, [this](std::uint32_t x, std::uint32_t y) { return (x + y) % p_; });
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 2; g < q_; ++g) {
      std::vector<bool> seen(q_, false);
      std::uint32_t x = 1;
      std::uint32_t k = 0;
      for (; k < q_ - 1; ++k) {
        if (seen[x]) break;
        seen[x] = true;
        exp_[k] = x;
        log_[x] = k;
        x = slow_mul(x, g);
      }
      if (k == q_ - 1 && x == 1) return;
    }
    throw DomainError("no primitive element found");  // unreachable: F_q^* is cyclic
  }

  std::uint32_t p_, n_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

// A field element bound to its context. Arithmetic between elements of
// different fields throws DomainError.
class FieldElem {
 public:
  FieldElem(FieldPtr ctx, std::uint32_t code) : ctx_(std::move(ctx)), code_(code) {
    if (!ctx_) throw DomainError("null field context");
    ctx_->check_code(code_);
  }

  std::uint32_t code() const { return code_; }
  const FieldPtr& field() const { return ctx_; }
  std::vector<std::uint32_t> representative() const { return ctx_->representative(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElem inverse() const { return {ctx_, ctx_->inv(code_)}; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->add(a.code_, b.code_)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->sub(a.code_, b.code_)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->mul(a.code_, b.code_)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    same(a, b);
    return {a.ctx_, a.ctx_->div(a.code_, b.code_)};
  }
  FieldElem operator-() const { return {ctx_, ctx_->neg(code_)}; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return *a.ctx_ == *b.ctx_ && a.code_ == b.code_;
  }

 private:
  static void same(const FieldElem& a, const FieldElem& b) {
    if (!(*a.ctx_ == *b.ctx_))
      throw DomainError("field context mismatch: q=" + std::to_string(a.ctx_->q()) +
                        " vs q=" + std::to_string(b.ctx_->q()));
  }

  FieldPtr ctx_;
  std::uint32_t code_;
};

inline FieldElem FieldCtx::elem(std::uint32_t code) const { return {shared_from_this(), code}; }

inline FieldPtr make_field(std::uint32_t p, std::uint32_t n = 1) { return FieldCtx::make(p, n); }

}  // namespace ffdisc
