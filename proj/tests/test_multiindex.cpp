#include <gtest/gtest.h>

#include <random>

#include "radonlab/multiindex.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/phase.hpp"

using namespace radonlab;

TEST(NumberTheory, GcdLcmAndPowers) {
  EXPECT_EQ(big_lcm(BigInt(4), BigInt(6)), 12);
  EXPECT_EQ(big_gcd(BigInt(-12), BigInt(18)), 6);
  EXPECT_EQ(powmod(3, 5, 7), 243 % 7);
  EXPECT_EQ(residue(-3, 5), 2u);
  EXPECT_EQ(big_pow(BigInt(2), 100), BigInt(1) << 100);
}

TEST(NumberTheory, CheckedArithmeticReportsOverflow) {
  EXPECT_EQ(checked_mul(1 << 20, 1 << 20), std::int64_t(1) << 40);
  EXPECT_THROW(checked_mul(std::int64_t(1) << 40, std::int64_t(1) << 40), OverflowError);
  EXPECT_THROW(checked_add(std::numeric_limits<std::int64_t>::max(), 1), OverflowError);
}

TEST(NumberTheory, Factorization) {
  const auto f = factorize(360);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].prime, 2);
  EXPECT_EQ(f[0].exponent, 3u);
  EXPECT_EQ(f[2].prime, 5);
  EXPECT_EQ(primes_up_to(30).size(), 10u);
  EXPECT_EQ(prime_divisors(84), (std::vector<std::int64_t>{2, 3, 7}));
}

TEST(NumberTheory, JordanTotientMatchesCount) {
  for (std::int64_t q = 1; q <= 30; ++q)
    for (unsigned d = 1; d <= 2; ++d) {
      std::int64_t count = 0;
      for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < (d == 2 ? q : 1); ++b)
          if (std::gcd(std::gcd(a, b), q) == 1) ++count;
      EXPECT_EQ(jordan_totient(q, d), count) << "q=" << q << " d=" << d;
    }
}

TEST(NumberTheory, FloorAndTorusDistance) {
  EXPECT_EQ(floor_rational(Rational(-7, 2)), -4);
  EXPECT_EQ(frac_rational(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(torus_distance(Rational(9, 10)), Rational(1, 10));
  EXPECT_EQ(exact_rational(0.375), Rational(3, 8));
}

TEST(MultiIndexSet, SortedAndDeduplicated) {
  const MultiIndexSet s(2, {MultiIndex{1, 1}, MultiIndex{0, 1}, MultiIndex{1, 0}});
  EXPECT_EQ(s[0], (MultiIndex{0, 1}));
  EXPECT_EQ(s[2], (MultiIndex{1, 1}));
  EXPECT_EQ(s.max_degree(), 2);
  const MultiIndexSet again(2, s.members());
  EXPECT_EQ(again.members(), s.members());
  EXPECT_THROW(MultiIndexSet(2, {MultiIndex{0, 0}}), PreconditionError);
}

TEST(MultiIndexSet, FullDegreeSets) {
  EXPECT_EQ(full_degree_set(1, 2).members(), (std::vector<MultiIndex>{MultiIndex{1}, MultiIndex{2}}));
  EXPECT_EQ(full_degree_set(2, 1).members(), (std::vector<MultiIndex>{MultiIndex{0, 1}, MultiIndex{1, 0}}));
  EXPECT_EQ(full_degree_set(2, 2).size(), 5u);
  for (std::size_t k = 1; k <= 3; ++k)
    for (int d = 1; d <= 4; ++d) {
      std::uint64_t expect = 0;
      for (int l = 1; l <= d; ++l) expect += binomial_u64(static_cast<unsigned>(l + k - 1), static_cast<unsigned>(k - 1));
      EXPECT_EQ(full_degree_set(k, d).size(), expect);
    }
}

TEST(CanonicalMap, Examples) {
  const MultiIndexSet g(2, {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{1, 1}});
  const std::int64_t x[2] = {2, 3};
  // Lexicographic order puts (0,1) first.
  EXPECT_EQ(canonical_map(x, g), (std::vector<BigInt>{3, 2, 6}));
  const std::int64_t zero[2] = {0, 0};
  EXPECT_EQ(canonical_map(zero, g), (std::vector<BigInt>{0, 0, 0}));
  const std::int64_t m1[1] = {-1};
  EXPECT_EQ(canonical_map(m1, full_degree_set(1, 3)), (std::vector<BigInt>{-1, 1, -1}));
}

TEST(CanonicalMap, LinearOnlyForDegreeOne) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> u(-50, 50);
  const auto lin = full_degree_set(2, 1);
  const auto quad = full_degree_set(2, 2);
  bool quad_nonlinear = false;
  for (int i = 0; i < 100; ++i) {
    const std::int64_t x[2] = {u(rng), u(rng)}, y[2] = {u(rng), u(rng)}, s[2] = {x[0] + y[0], x[1] + y[1]};
    const auto a = canonical_map(x, lin), b = canonical_map(y, lin), c = canonical_map(s, lin);
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], a[j] + b[j]);
    const auto qa = canonical_map(x, quad), qb = canonical_map(y, quad), qc = canonical_map(s, quad);
    for (std::size_t j = 0; j < qc.size(); ++j) quad_nonlinear = quad_nonlinear || qc[j] != qa[j] + qb[j];
  }
  EXPECT_TRUE(quad_nonlinear);
}

TEST(CanonicalMap, CheckedPathReportsOverflow) {
  const std::int64_t x[1] = {std::int64_t(1) << 32};
  EXPECT_THROW(canonical_map_checked(x, full_degree_set(1, 2)), OverflowError);
}

TEST(QuasiNorm, Examples) {
  const MultiIndexSet g2(1, {MultiIndex{2}});
  EXPECT_DOUBLE_EQ(quasi_norm(FrequencyVector(g2, std::vector<Rational>{Rational(1, 4)})), 0.5);
  EXPECT_EQ(quasi_norm(FrequencyVector::zero(full_degree_set(2, 2))), 0.0);
  const auto g12 = full_degree_set(1, 2);
  EXPECT_DOUBLE_EQ(quasi_norm(FrequencyVector(g12, std::vector<double>{0.3, 0.04})), 0.3);
}

TEST(QuasiNorm, DilationScalesByTwoToT) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ut(-8.0, 8.0);
  const auto g = full_degree_set(2, 3);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> v(g.size());
    for (auto& x : v) x = u(rng);
    const FrequencyVector xi(g, v);
    const double t = ut(rng);
    const double lhs = quasi_norm(anisotropic_dilate(xi, t));
    EXPECT_NEAR(lhs, std::exp2(t) * quasi_norm(xi), 1e-12 * std::max(1.0, lhs));
  }
}

TEST(AnisotropicDilate, ExactComponents) {
  const MultiIndexSet g(1, {MultiIndex{2}});
  const FrequencyVector xi(g, std::vector<Rational>{Rational(1)});
  EXPECT_EQ(anisotropic_dilate(xi, 1).exact()[0], 4);
  EXPECT_EQ(anisotropic_dilate(xi, 0).exact()[0], 1);
  EXPECT_EQ(anisotropic_dilate(xi, -1).exact()[0], Rational(1, 4));
  EXPECT_THROW(anisotropic_dilate(xi, 0.5), PreconditionError);
}

TEST(FrequencyVector, PeriodicReductionAndStorage) {
  const auto g = full_degree_set(1, 2);
  const FrequencyVector xi(g, std::vector<Rational>{Rational(5, 4), Rational(-1, 3)}, true);
  EXPECT_EQ(xi.exact()[0], Rational(1, 4));
  EXPECT_EQ(xi.exact()[1], Rational(2, 3));
  EXPECT_THROW((void)xi.approx(), PreconditionError);
  EXPECT_THROW(FrequencyVector(g, std::vector<double>{1.0}), PreconditionError);
}

TEST(ParseGamma, BothForms) {
  EXPECT_EQ(parse_gamma_spec("k=1;deg<=2").members(), full_degree_set(1, 2).members());
  const auto s = parse_gamma_spec("1,0;0,1;1,1");
  EXPECT_EQ(s.k(), 2u);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_THROW(parse_gamma_spec("k=;deg<=x"), PreconditionError);
  EXPECT_THROW(parse_gamma_spec("1,0;1"), PreconditionError);
}

TEST(Phase, ExactReductionForLargeArguments) {
  const BigInt big = (BigInt(1) << 200) + 1;
  const Complex z = unit_phase(Rational(big, 4));
  EXPECT_NEAR(z.real(), 0.0, 1e-15);
  EXPECT_NEAR(z.imag(), 1.0, 1e-15);
}
