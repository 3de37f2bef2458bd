#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ffdisc/sequences.hpp"

using namespace ffdisc;

namespace {

using Codes = std::vector<std::uint32_t>;

Poly P(const FieldPtr& f, Codes c) { return {f, std::move(c)}; }

LaurentPrefix frac(const FieldPtr& f, Codes a, bool exact = false) {
  return LaurentPrefix::fractional(f, std::move(a), exact);
}

bool same_value(const FixedPoint& a, std::uint64_t num, std::uint64_t den) {
  return Fraction{num, den} == a;
}

// <n(t) Theta> digits by direct convolution: coefficient of t^-i is
// sum_j n_j a_{i+j}.
std::uint64_t kron_oracle(std::uint64_t n, const FieldCtx& f, const Codes& a, unsigned digits) {
  Codes nd;
  for (std::uint64_t v = n; v; v /= f.q()) nd.push_back(static_cast<std::uint32_t>(v % f.q()));
  std::uint64_t num = 0;
  for (unsigned i = 1; i <= digits; ++i) {
    std::uint32_t s = 0;
    for (std::size_t j = 0; j < nd.size(); ++j) s = f.add(s, f.mul(nd[j], a.at(i + j - 1)));
    num = num * f.q() + s;
  }
  return num;
}

}  // namespace

TEST(Vdc, Examples) {
  auto f2 = make_field(2), f3 = make_field(3);
  EXPECT_TRUE(same_value(vdc_digital(3, P(f2, {0, 1})), 3, 4));
  EXPECT_TRUE(same_value(vdc_digital(5, P(f3, {0, 1})), 7, 9));
  EXPECT_TRUE(same_value(vdc_digital(4, P(f2, {1, 0, 1})), 5, 16));
  EXPECT_TRUE(same_value(vdc_digital(0, P(f2, {1, 0, 1})), 0, 1));
}

TEST(Vdc, ClassicalExamples) {
  EXPECT_EQ(classical_vdc(3, 2), (Fraction{3, 4}));
  EXPECT_EQ(classical_vdc(5, 3), (Fraction{7, 9}));
  EXPECT_THROW(classical_vdc(5, 1), DomainError);
  EXPECT_NEAR(classical_kronecker(2, (std::sqrt(5.0) - 1) / 2), 0.2360679774997898, 1e-12);
}

TEST(Vdc, CoincidesWithClassicalRadicalInverse) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto f = make_field(p);
    const Poly t = P(f, {0, 1});
    const std::uint64_t limit = checked_pow(p, 8);
    for (std::uint64_t n = 0; n < limit; ++n) ASSERT_TRUE(classical_vdc(n, p) == vdc_digital(n, t)) << p << " " << n;
  }
}

TEST(Kronecker, Examples) {
  auto f2 = make_field(2);
  EXPECT_TRUE(same_value(kron_digital(3, frac(f2, {1}, true), 4), 1, 2));
  EXPECT_TRUE(same_value(kron_digital(2, frac(f2, {1}, true), 4), 0, 1));
  EXPECT_TRUE(same_value(kron_digital(2, frac(f2, {1, 0, 1}, true), 4), 1, 4));
}

TEST(Kronecker, MatchesConvolutionOracle) {
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
    auto f = FieldCtx::of_order(q);
    std::uniform_int_distribution<std::uint32_t> code(0, q - 1);
    Codes a(40);
    for (auto& v : a) v = code(rng);
    const auto theta = frac(f, a);
    for (std::uint64_t n = 0; n < 2000; n += 7) {
      const auto x = kron_digital(n, theta, 8);
      ASSERT_EQ(x.log_den, 8u);
      ASSERT_EQ(x.num, kron_oracle(n, *f, a, 8)) << q << " " << n;
    }
  }
}

TEST(Kronecker, PrecisionShortfallThrows) {
  auto f3 = make_field(3);
  EXPECT_THROW(kron_digital(9, frac(f3, {1, 2, 1}), 3), PrecisionError);
  EXPECT_NO_THROW(kron_digital(9, frac(f3, {1, 2, 1, 0, 0}), 3));
}

TEST(Hybrid, Examples) {
  auto f3 = make_field(3), f2 = make_field(2);
  const auto p0 = hybrid(0, frac(f3, {1}, true), P(f3, {0, 1}), 4);
  EXPECT_EQ(p0.x.num, 0u);
  EXPECT_EQ(p0.y.num, 0u);
  const auto p1 = hybrid(1, frac(f3, {1}, true), P(f3, {0, 1}), 4);
  EXPECT_TRUE(same_value(p1.x, 1, 3));
  EXPECT_TRUE(same_value(p1.y, 1, 3));
  // (t^2+1)^-1 over F_2 = t^-2 + t^-4 + t^-6 + ... by long division.
  const Poly b = P(f2, {1, 0, 1});
  const auto phi = compose_inverse(frac(f2, {1}, true), b, 14);
  const auto h = hybrid(1, phi, b, 12);
  EXPECT_EQ(h.x.num, 0b010101010101u);
  EXPECT_EQ(h.x.log_den, 12u);
  EXPECT_TRUE(same_value(h.y, 1, 4));
}

TEST(Precision, Policy) {
  const auto r = run_precision(59049, 3, 2, 4);
  EXPECT_EQ(r.blocks, 5u);
  EXPECT_EQ(r.log_den, 18u);
  EXPECT_EQ(r.max_degree, 9u);
  EXPECT_EQ(r.series_depth, 27u);
  EXPECT_EQ(r.theta_coeffs, 13u);
  const auto g = run_precision(8, 2, 1, 4);
  EXPECT_EQ(g.log_den, 7u);
  EXPECT_EQ(run_precision(0, 3, 1, 4).blocks, 0u);
  EXPECT_THROW(run_precision(10, 3, 1, 0), DomainError);
  EXPECT_THROW(run_precision(10, 3, 0, 4), DomainError);
}

TEST(HybridGenerator, MatchesReferencePath) {
  std::mt19937_64 rng(23);
  struct Case {
    std::uint32_t q;
    Codes p;
    std::uint64_t count;
  };
  const Case cases[] = {{2, {0, 1}, 300},    {2, {1, 1, 1}, 500},    {3, {0, 1}, 400},
                        {3, {1, 0, 1}, 900}, {3, {2, 1, 0, 1}, 800}, {4, {0, 1}, 300},
                        {4, {2, 1, 1}, 600}, {9, {0, 1}, 200},       {5, {2, 0, 1}, 700}};
  for (const auto& c : cases) {
    auto f = FieldCtx::of_order(c.q);
    const Poly p = P(f, c.p);
    std::uniform_int_distribution<std::uint32_t> code(0, c.q - 1);
    Codes a(64);
    for (auto& v : a) v = code(rng);
    const unsigned d = static_cast<unsigned>(p.degree());
    const auto prec = run_precision(c.count, c.q, d, 4);
    const auto phi = compose_inverse(frac(f, a), p, prec.series_depth);
    const HybridGenerator gen(phi, p, c.count);
    const auto pts = gen.generate_all(3);
    ASSERT_EQ(pts.size(), c.count);
    for (std::uint64_t n = 0; n < c.count; ++n) {
      const Point2D ref = hybrid(n, phi, p, gen.log_den());
      ASSERT_EQ(pts[n].index, n);
      ASSERT_EQ(pts[n].x, ref.x) << "q=" << c.q << " n=" << n;
      ASSERT_EQ(pts[n].y, ref.y) << "q=" << c.q << " n=" << n;
      ASSERT_EQ(pts[n].x.log_den, prec.log_den);
      ASSERT_EQ(pts[n].y.log_den, prec.log_den);
    }
  }
}

TEST(HybridGenerator, ThreadCountInvariant) {
  auto f3 = make_field(3);
  const Poly p = P(f3, {1, 0, 1});
  const auto phi = induce(frac(f3, Codes(20, 1)), p, 40);
  const HybridGenerator gen(phi, p, 20000);
  const auto one = gen.generate_all(1);
  for (unsigned t : {2u, 5u, 8u}) {
    const auto many = gen.generate_all(t);
    for (std::size_t i = 0; i < one.size(); ++i) {
      ASSERT_EQ(one[i].x, many[i].x);
      ASSERT_EQ(one[i].y, many[i].y);
    }
  }
}

TEST(HybridGenerator, RejectsShortSeriesAndLargeIndex) {
  auto f3 = make_field(3);
  const Poly p = P(f3, {1, 0, 1});
  EXPECT_THROW(HybridGenerator(frac(f3, Codes(10, 1)), p, 1000), PrecisionError);
  const auto phi = induce(frac(f3, Codes(20, 1)), p, 40);
  const HybridGenerator gen(phi, p, 100);
  EXPECT_THROW(gen(100000), PrecisionError);
  EXPECT_TRUE(gen.generate_all().size() == 100);
  EXPECT_TRUE(HybridGenerator(phi, p, 0).generate_all().empty());
}
