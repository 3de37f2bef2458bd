#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ffdisc/poly.hpp"

using namespace ffdisc;

namespace {

using Codes = std::vector<std::uint32_t>;

Poly P(const FieldPtr& f, Codes c) { return {f, std::move(c)}; }

Poly random_poly(const FieldPtr& f, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(-1, max_deg);
  std::uniform_int_distribution<std::uint32_t> code(0, f->q() - 1);
  Codes c(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& x : c) x = code(rng);
  return P(f, c);
}

// Every monic polynomial of degree 1..deg-1 that divides p, by brute-force
// multiplication of all candidate cofactors.
bool has_factor_oracle(const Poly& p) {
  const auto f = p.ctx();
  const int n = p.degree();
  for (int da = 1; da < n; ++da) {
    const int db = n - da;
    std::uint64_t na = 1, nb = 1;
    for (int i = 0; i < da; ++i) na *= f->q();
    for (int i = 0; i <= db; ++i) nb *= f->q();
    for (std::uint64_t ia = 0; ia < na; ++ia) {
      Codes a(da + 1, 1);
      std::uint64_t v = ia;
      for (int i = 0; i < da; ++i, v /= f->q()) a[i] = static_cast<std::uint32_t>(v % f->q());
      for (std::uint64_t ib = 0; ib < nb; ++ib) {
        Codes b(db + 1);
        std::uint64_t w = ib;
        for (int i = 0; i <= db; ++i, w /= f->q()) b[i] = static_cast<std::uint32_t>(w % f->q());
        if (P(f, a) * P(f, b) == p) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST(Poly, CanonicalForm) {
  auto f = make_field(3);
  EXPECT_EQ(P(f, {1, 2, 0, 0}).coeffs(), (Codes{1, 2}));
  EXPECT_TRUE(P(f, {0, 0}).is_zero());
  EXPECT_EQ(P(f, {}).degree(), -1);
  EXPECT_EQ(P(f, {}).norm(), 0u);
  EXPECT_EQ(P(f, {1, 0, 2}).norm(), 9u);
  EXPECT_EQ(P(f, {1, 0, 2})[7], 0u);
  EXPECT_THROW(P(f, {3}), DomainError);
}

TEST(Poly, DivremExamples) {
  auto f3 = make_field(3), f2 = make_field(2);
  auto [q1, r1] = divrem(P(f3, {1, 0, 1}), P(f3, {0, 1}));
  EXPECT_EQ(q1, P(f3, {0, 1}));
  EXPECT_EQ(r1, P(f3, {1}));
  auto [q2, r2] = divrem(P(f2, {0, 1, 0, 1}), P(f2, {1, 0, 1}));
  EXPECT_EQ(q2, P(f2, {0, 1}));
  EXPECT_TRUE(r2.is_zero());
  auto [q3, r3] = divrem(P(f3, {2, 1, 0, 2}), P(f3, {1, 0, 1}));
  EXPECT_EQ(q3, P(f3, {0, 2}));
  EXPECT_EQ(r3, P(f3, {2, 2}));
  EXPECT_THROW(divrem(P(f3, {1}), P(f3, {})), DomainError);
  EXPECT_THROW(divrem(P(f3, {1}), P(f2, {1})), DomainError);
}

TEST(Poly, DivremRandomized) {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
    auto f = FieldCtx::of_order(q);
    for (int trial = 0; trial < 300; ++trial) {
      const Poly a = random_poly(f, rng, 10);
      Poly b = random_poly(f, rng, 5);
      if (b.is_zero()) b = Poly::constant(f, 1);
      auto [qq, r] = divrem(a, b);
      ASSERT_EQ(qq * b + r, a);
      ASSERT_LT(r.degree(), b.degree() < 0 ? 0 : std::max(b.degree(), 0) + (b.degree() == 0 ? 0 : 0));
    }
  }
}

TEST(Poly, RingIdentities) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
    auto f = FieldCtx::of_order(q);
    for (int trial = 0; trial < 200; ++trial) {
      const Poly a = random_poly(f, rng, 6), b = random_poly(f, rng, 6), c = random_poly(f, rng, 6);
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ((a - b) + b, a);
      ASSERT_EQ(a + (-a), P(f, {}));
      if (!a.is_zero() && !b.is_zero()) {
        ASSERT_EQ((a * b).norm(), a.norm() * b.norm());
      }
    }
  }
  auto f = make_field(3);
  EXPECT_EQ(pow(P(f, {1, 1}), 3), P(f, {1, 0, 0, 1}));  // Frobenius
  EXPECT_EQ(pow(P(f, {1, 1}), 0), P(f, {1}));
  EXPECT_EQ(P(f, {1, 2}).scaled(2), P(f, {2, 1}));
}

TEST(Poly, AssociatedPolyExamples) {
  auto f2 = make_field(2), f3 = make_field(3), f4 = make_field(2, 2);
  EXPECT_EQ(associated_poly(5, f2), P(f2, {1, 0, 1}));
  EXPECT_EQ(associated_poly(7, f3), P(f3, {1, 2}));
  EXPECT_EQ(associated_poly(11, f4).coeffs(), (Codes{3, 2}));
  EXPECT_TRUE(associated_poly(0, f3).is_zero());
  EXPECT_EQ(poly_to_nat(P(f2, {})), 0u);
  EXPECT_EQ(poly_to_nat(P(f2, {1, 0, 1})), 5u);
  EXPECT_EQ(poly_to_nat(P(f4, {3, 2})), 11u);
  EXPECT_THROW(poly_to_nat(Poly::monomial(f3, 41)), PrecisionError);
}

TEST(Poly, NaturalRoundTrip) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 256u, 65536u}) {
    auto f = FieldCtx::of_order(q);
    for (std::uint64_t n = 0; n < 100000; ++n) ASSERT_EQ(poly_to_nat(associated_poly(n, f)), n) << "q=" << q;
  }
}

TEST(Poly, BaseExpandExamples) {
  auto f2 = make_field(2);
  const Poly b = P(f2, {1, 0, 1});
  auto e1 = base_expand(P(f2, {0, 1, 0, 1}), b);
  ASSERT_EQ(e1.digits.size(), 2u);
  EXPECT_TRUE(e1.digits[0].is_zero());
  EXPECT_EQ(e1.digits[1], P(f2, {0, 1}));
  auto e2 = base_expand(P(f2, {0, 0, 1}), b);
  ASSERT_EQ(e2.digits.size(), 2u);
  EXPECT_EQ(e2.digits[0], P(f2, {1}));
  EXPECT_EQ(e2.digits[1], P(f2, {1}));
  auto e3 = base_expand(P(f2, {1}), b);
  ASSERT_EQ(e3.digits.size(), 1u);
  EXPECT_EQ(e3.digits[0], P(f2, {1}));
  EXPECT_TRUE(base_expand(P(f2, {}), b).digits.empty());
  EXPECT_THROW(base_expand(P(f2, {1, 1}), P(f2, {1})), DomainError);
}

TEST(Poly, BaseExpandReconstructsExhaustively) {
  for (std::uint32_t q : {2u, 3u}) {
    auto f = FieldCtx::of_order(q);
    const Poly bases[] = {P(f, {0, 1}), P(f, {1, 0, 1})};
    std::uint64_t limit = 1;
    for (int i = 0; i < 9; ++i) limit *= q;  // every A with deg <= 8
    for (const Poly& b : bases)
      for (std::uint64_t n = 0; n < limit; ++n) {
        const Poly a = associated_poly(n, f);
        const auto e = base_expand(a, b);
        ASSERT_EQ(e.reconstruct(), a);
        if (!e.digits.empty()) {
          ASSERT_FALSE(e.digits.back().is_zero());
        }
        for (const auto& d : e.digits) ASSERT_LT(d.degree(), b.degree());
        ASSERT_LE(e.digits.size(), static_cast<std::size_t>(std::max(a.degree(), 0) / b.degree() + 1));
      }
  }
}

TEST(Poly, IrreducibilityExamples) {
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) EXPECT_TRUE(is_irreducible(Poly::monomial(FieldCtx::of_order(q), 1)));
  auto f2 = make_field(2), f3 = make_field(3);
  EXPECT_FALSE(is_irreducible(P(f2, {1, 0, 1})));
  EXPECT_TRUE(is_irreducible(P(f3, {1, 0, 1})));
  EXPECT_FALSE(is_irreducible(P(f3, {0, 0, 1})));
  EXPECT_THROW(is_irreducible(P(f3, {2})), DomainError);
}

TEST(Poly, IrreducibilityMatchesFactorOracle) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = FieldCtx::of_order(q);
    const int max_deg = q == 2 ? 6 : 4;
    std::uint64_t limit = 1;
    for (int i = 0; i <= max_deg; ++i) limit *= q;
    for (std::uint64_t n = q; n < limit; ++n) {
      const Poly p = associated_poly(n, f);
      if (p.lead() != 1) continue;
      ASSERT_EQ(is_irreducible(p), !has_factor_oracle(p)) << "q=" << q << " n=" << n;
    }
  }
}
