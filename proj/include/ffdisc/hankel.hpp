#pragma once

// Hankel matrices over F_q built from a coefficient sequence A = (a_1, a_2, ...),
// finite-depth Bad(t,q) certificates, the lexicographic certificate search,
// and affine solution counting for Hankel systems with polynomial digits.
//
// Index convention: H_A(k, m, n) has rows i = 0..m, columns j = 0..n and
// entry a_{k+i+j}. Coefficient spans hold a_1 at index 0.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffdisc/fixed_point.hpp"
#include "ffdisc/parallel.hpp"
#include "ffdisc/poly.hpp"

namespace ffdisc {

using Matrix = std::vector<std::vector<std::uint32_t>>;

// Row echelon form in place; returns the rank. Columns >= pivot_cols are
// carried along but never chosen as pivots.
inline std::size_t eliminate(const FieldCtx& f, Matrix& m, std::size_t pivot_cols) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::uint32_t inv = f.inv(m[rank][c]);
    for (auto& v : m[rank]) v = f.mul(v, inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint32_t factor = m[r][c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_fq(const FieldCtx& f, Matrix m) {
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  return eliminate(f, m, cols);
}

class HankelMatrix {
 public:
  HankelMatrix(FieldPtr ctx, std::span<const std::uint32_t> a, std::size_t k, std::size_t m, std::size_t n)
      : ctx_(std::move(ctx)), k_(k), rows_(m + 1), cols_(n + 1) {
    if (k < 1) throw DomainError("Hankel offset k must be >= 1");
    if (k + m + n > a.size())
      throw PrecisionError("H_A(" + std::to_string(k) + "," + std::to_string(m) + "," + std::to_string(n) +
                           ") needs a_" + std::to_string(k + m + n) + ", prefix has " +
                           std::to_string(a.size()) + " coefficients");
    // One stored value per anti-diagonal.
    diag_.assign(a.begin() + static_cast<std::ptrdiff_t>(k - 1),
                 a.begin() + static_cast<std::ptrdiff_t>(k + m + n));
    for (auto v : diag_) ctx_->check_code(v);
  }

  std::size_t offset() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& ctx() const { return ctx_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return diag_[i + j]; }

  Matrix dense() const {
    Matrix m(rows_, std::vector<std::uint32_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m[i][j] = diag_[i + j];
    return m;
  }

  std::size_t rank() const { return rank_fq(*ctx_, dense()); }

  // Row sums sum_j entry(i, j) * digits[j] with polynomial digits.
  std::vector<Poly> apply(std::span<const Poly> digits) const {
    if (digits.size() != cols_) throw DomainError("Hankel apply: expected " + std::to_string(cols_) + " digits");
    std::vector<Poly> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Poly s(ctx_);
      for (std::size_t j = 0; j < cols_; ++j)
        if (diag_[i + j] != 0) s += digits[j].scaled(diag_[i + j]);
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  FieldPtr ctx_;
  std::size_t k_, rows_, cols_;
  std::vector<std::uint32_t> diag_;
};

struct HankelIndex {
  std::size_t k = 0;
  std::size_t l = 0;
  friend bool operator==(const HankelIndex&, const HankelIndex&) = default;
};

struct BadCertificate {
  bool pass = false;
  unsigned deficiency = 0;
  std::size_t depth = 0;
  std::size_t checked = 0;
  std::optional<HankelIndex> first_failure;
  std::vector<HankelIndex> checked_pairs;  // filled on request
};

// Every (k, l) with k >= 1, l >= 0 and k + 2l + D <= depth, ordered by the
// deepest coefficient referenced, then by k.
inline std::vector<HankelIndex> certificate_pairs(std::size_t depth, unsigned deficiency) {
  std::vector<HankelIndex> out;
  for (std::size_t dep = deficiency + 1; dep <= depth; ++dep) {
    const std::size_t span = dep - deficiency - 1;  // k - 1 + 2l
    for (std::size_t l = span / 2 + 1; l-- > 0;) out.push_back({span - 2 * l + 1, l});
  }
  return out;
}

// Checks that H_A(k, l, l + D) has full rank l + 1 for every pair the prefix
// can feed. A pass certifies the prefix only, not membership in Bad(t,q).
inline BadCertificate verify_bad_t(const FieldPtr& ctx, std::span<const std::uint32_t> a, unsigned deficiency,
                                   unsigned threads = 1, bool record_pairs = false) {
  BadCertificate cert;
  cert.deficiency = deficiency;
  cert.depth = a.size();
  const auto pairs = certificate_pairs(a.size(), deficiency);
  std::vector<char> ok(pairs.size(), 1);
  parallel_chunks(0, pairs.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto [k, l] = pairs[i];
      ok[i] = HankelMatrix(ctx, a, k, l, l + deficiency).rank() == l + 1;
    }
  });
  cert.pass = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ++cert.checked;
    if (record_pairs) cert.checked_pairs.push_back(pairs[i]);
    if (!ok[i]) {
      cert.pass = false;
      cert.first_failure = pairs[i];
      break;
    }
  }
  return cert;
}

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t deepest = 0;
};

// Depth-first search for the lexicographically smallest prefix a_1..a_len
// (codes compared as integers) passing verify_bad_t with deficiency D.
// Returns nullopt when no such prefix exists.
inline std::optional<std::vector<std::uint32_t>> search_bad_prefix(
    const FieldPtr& ctx, unsigned deficiency, std::size_t len, SearchStats* stats = nullptr,
    const std::function<void(const SearchStats&)>& progress = {}) {
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  std::vector<std::uint32_t> a;
  a.reserve(len);
  if (len == 0) return a;
  const std::uint32_t q = ctx->q();

  // All constraints whose deepest entry is a_pos, cheapest first.
  auto admissible = [&](std::size_t pos) {
    if (pos <= deficiency) return true;
    const std::size_t span = pos - deficiency - 1;
    for (std::size_t l = 0; 2 * l <= span; ++l) {
      const std::size_t k = span - 2 * l + 1;
      if (HankelMatrix(ctx, a, k, l, l + deficiency).rank() != l + 1) return false;
    }
    return true;
  };

  a.push_back(0);
  while (!a.empty()) {
    ++st.nodes;
    if (progress && (st.nodes & 0xFFFFF) == 0) progress(st);
    if (admissible(a.size())) {
      if (a.size() > st.deepest) st.deepest = a.size();
      if (a.size() == len) return a;
      a.push_back(0);
      continue;
    }
    // Advance to the next candidate, backtracking past exhausted positions.
    while (!a.empty() && a.back() + 1 == q) a.pop_back();
    if (!a.empty()) ++a.back();
  }
  return std::nullopt;
}

// A Hankel system H x = z where x holds polynomial digits of degree < d and
// some columns have prescribed digits.
struct HankelSystem {
  HankelMatrix matrix;
  std::vector<Poly> rhs;
  std::map<std::size_t, Poly> fixed;
  unsigned block_degree = 1;
};

// Number of digit vectors for the free columns solving the system: 0 when
// inconsistent, otherwise q^(d * nullity). The digit coefficients of t^s
// form d independent systems over F_q.
inline std::uint64_t count_affine_solutions(const HankelSystem& sys) {
  const HankelMatrix& h = sys.matrix;
  const FieldCtx& f = *h.ctx();
  const unsigned d = sys.block_degree;
  if (d < 1) throw DomainError("block degree must be >= 1");
  if (sys.rhs.size() != h.rows())
    throw DomainError("right-hand side has " + std::to_string(sys.rhs.size()) + " entries, matrix has " +
                      std::to_string(h.rows()) + " rows");
  for (const auto& z : sys.rhs)
    if (z.degree() >= static_cast<int>(d)) throw DomainError("right-hand side digit has degree >= d");
  for (const auto& [col, digit] : sys.fixed) {
    if (col >= h.cols()) throw DomainError("fixed column " + std::to_string(col) + " out of range");
    if (digit.degree() >= static_cast<int>(d)) throw DomainError("fixed digit has degree >= d");
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < h.cols(); ++c)
    if (!sys.fixed.count(c)) free_cols.push_back(c);

  std::uint64_t total = 1;
  for (unsigned s = 0; s < d; ++s) {
    Matrix aug(h.rows(), std::vector<std::uint32_t>(free_cols.size() + 1));
    for (std::size_t r = 0; r < h.rows(); ++r) {
      std::uint32_t rhs = sys.rhs[r][s];
      for (const auto& [col, digit] : sys.fixed) rhs = f.sub(rhs, f.mul(h(r, col), digit[s]));
      for (std::size_t j = 0; j < free_cols.size(); ++j) aug[r][j] = h(r, free_cols[j]);
      aug[r].back() = rhs;
    }
    const std::size_t rank = eliminate(f, aug, free_cols.size());
    for (std::size_t r = rank; r < aug.size(); ++r)
      if (aug[r].back() != 0) return 0;
    total *= checked_pow(f.q(), static_cast<unsigned>(free_cols.size() - rank));
  }
  return total;
}

// R(t) with n(t) == R(t) mod P^l  <=>  V_n(P) in [v/q^(dl), (v+1)/q^(dl)).
// Block i of R (coefficient of P^i) holds the base-q digits
// v_{d(l-1-i)}, ..., v_{d(l-1-i)+d-1} of v as t^0..t^(d-1) coefficients.
inline Poly vdc_congruence(std::uint64_t v, std::size_t l, const Poly& p) {
  if (p.degree() < 1) throw DomainError("vdc_congruence: P must have degree >= 1");
  const unsigned d = static_cast<unsigned>(p.degree());
  const std::uint32_t q = p.field().q();
  const std::uint64_t limit = checked_pow(q, static_cast<unsigned>(d * l));
  if (v >= limit)
    throw DomainError("vdc_congruence: v=" + std::to_string(v) + " must be < q^(dl)=" + std::to_string(limit));
  std::vector<std::uint32_t> digits(d * l);
  for (auto& x : digits) {
    x = static_cast<std::uint32_t>(v % q);
    v /= q;
  }
  Poly r(p.ctx());
  Poly pi = Poly::constant(p.ctx(), 1);
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<std::uint32_t> block(d);
    for (unsigned j = 0; j < d; ++j) block[j] = digits[d * (l - 1 - i) + j];
    r += Poly(p.ctx(), std::move(block)) * pi;
    pi = pi * p;
  }
  return r;
}

// The digit vector z (length l, entries of degree < d) such that
// <n(t) Phi> lies in [k/q^(dl), (k+1)/q^(dl)) exactly when
// H_A(1, l-1, m) (n_0, ..., n_m) = z, where Phi = sum a_i P^-i and n_j are
// the base-P digits of n(t).
inline std::vector<Poly> kronecker_rhs(std::uint64_t k, std::size_t l, const Poly& p) {
  if (p.degree() < 1) throw DomainError("kronecker_rhs: P must have degree >= 1");
  const unsigned d = static_cast<unsigned>(p.degree());
  const std::uint32_t q = p.field().q();
  const std::size_t width = d * l;
  if (k >= checked_pow(q, static_cast<unsigned>(width)))
    throw DomainError("kronecker_rhs: k must be < q^(dl)");
  // W = t^(dl) * sum_m w_m t^-m where w_m is the m-th base-q digit of k/q^(dl).
  std::vector<std::uint32_t> w(width);
  for (std::size_t i = 0; i < width; ++i) {
    w[i] = static_cast<std::uint32_t>(k % q);  // coefficient of t^i
    k /= q;
  }
  const Poly wp(p.ctx(), std::move(w));
  // Polynomial part of (W / t^(dl)) * P^l, written in base P.
  const Poly prod = wp * pow(p, static_cast<unsigned>(l));
  std::vector<std::uint32_t> shifted;
  for (std::size_t i = width; i < prod.coeffs().size(); ++i) shifted.push_back(prod.coeffs()[i]);
  const auto exp = base_expand(Poly(p.ctx(), std::move(shifted)), p);
  std::vector<Poly> z;
  for (std::size_t r = 0; r < l; ++r) {
    const std::size_t s = l - 1 - r;
    z.push_back(s < exp.digits.size() ? exp.digits[s] : Poly(p.ctx()));
  }
  return z;
}

}  // namespace ffdisc
