#include <bit>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdq/trollope.hpp"
#include "tdq/verify.hpp"

using namespace tdq;

TEST(LogDecomposition, Parts) {
  const LogDecomposition d = LogDecomposition::of(12);
  EXPECT_EQ(d.k, 3U);
  EXPECT_EQ(d.p, 8U);
  EXPECT_EQ(d.x, DyadicRational::from_fraction(1, 1));
  EXPECT_NEAR(d.u, std::log2(1.5), 1e-15);
}

TEST(Theorem1, Examples) {
  const QWeight q(Scalar::exact(2, 3));
  EXPECT_TRUE(theorem1_rhs(1, q).is_zero());
  EXPECT_EQ(theorem1_rhs(3, QWeight(Scalar::exact(2))), Scalar::exact(2));
  for (unsigned k = 0; k <= 20; ++k) {
    const Scalar expect = S_q_pow2(k, q) / Scalar::from_natural(Natural{1} << k, Mode::ExactRational);
    EXPECT_EQ(theorem1_rhs(Natural{1} << k, q), expect) << k;
  }
  EXPECT_THROW(theorem1_rhs(5, QWeight(Scalar::exact(1, 3))), DomainError);
  EXPECT_THROW(theorem1_rhs(5, QWeight(Scalar::exact(1))), DomainError);
}

TEST(Theorem1, MatchesBruteForce) {
  for (const mpq_class& qr : {mpq_class(2, 3), mpq_class(-3, 4), mpq_class(5, 2)}) {
    const QWeight q{Scalar(qr)};
    const auto S = oracle::S_table(600, qr);
    for (Natural n = 1; n <= 600; ++n) {
      ASSERT_EQ(theorem1_rhs(n, q).rational(), mpq_class(S[n] / static_cast<unsigned long>(n))) << n;
    }
  }
}

TEST(DyadicFormula, Examples) {
  const Scalar q = Scalar::exact(-2, 7);
  EXPECT_EQ(dyadic_formula(3, QWeight(q)), (q + q * q) / Scalar::exact(3));
  const QWeight q23(Scalar::exact(2, 3));
  for (unsigned k = 0; k <= 12; ++k) {
    EXPECT_EQ(dyadic_formula(Natural{1} << k, q23),
              S_q_pow2(k, q23) / Scalar::from_natural(Natural{1} << k, Mode::ExactRational));
  }
  const auto S = oracle::S_table(5, mpq_class(1, 2));
  EXPECT_EQ(dyadic_formula(5, QWeight(Scalar::exact(1, 2))).rational(), mpq_class(S[5] / 5));
}

TEST(DyadicFormula, HoldsForSmallWeightsToo) {
  for (const mpq_class& qr : {mpq_class(1, 3), mpq_class(-1, 2), mpq_class(1, 10), mpq_class(2)}) {
    const QWeight q{Scalar(qr)};
    const auto S = oracle::S_table(600, qr);
    for (Natural n = 1; n <= 600; ++n) {
      ASSERT_EQ(dyadic_formula(n, q).rational(), mpq_class(S[n] / static_cast<unsigned long>(n))) << n;
    }
  }
}

TEST(Classic, Examples) {
  EXPECT_NEAR(classic_formula(1), 0.0, 1e-15);
  EXPECT_NEAR(classic_formula(2), 0.5, 1e-15);
  EXPECT_NEAR(classic_formula(3), 2.0 / 3.0, 1e-12);
}

TEST(Vdc, Examples) {
  EXPECT_EQ(vdc_star_discrepancy(1), Scalar::exact(1));
  EXPECT_EQ(vdc_star_discrepancy(2), Scalar::exact(1, 2));
  EXPECT_EQ(vdc_star_discrepancy(3), Scalar::exact(1, 2));
}

TEST(Vdc, MatchesSortedPointDiscrepancy) {
  std::vector<mpq_class> pts;
  for (Natural n = 1; n <= 300; ++n) {
    pts.push_back(oracle::van_der_corput(n - 1));
    ASSERT_EQ(vdc_star_discrepancy(n).rational(), oracle::star_discrepancy(pts)) << n;
  }
}

TEST(Larcher, ConstantWeightsVanish) {
  const double tol = 1e-14;
  for (const Scalar& c : {Scalar::exact(1), Scalar::exact(-3, 2), Scalar(0.25)}) {
    const WeightSequence g = WeightSequence::constant(c);
    for (Natural n = 2; n <= 1500; ++n) {
      ASSERT_LE(modulus(larcher_residual(n, g, tol)), 1e-11 * n) << n;
    }
  }
  EXPECT_LE(modulus(larcher_residual(3, WeightSequence::constant(Scalar::exact(1)), tol)), 3e-12);
}

TEST(Larcher, DecayTrendForConvergentWeights) {
  std::vector<Scalar> head;
  for (unsigned i = 0; i < 64; ++i) head.push_back(Scalar(1.0 + std::ldexp(1.0, -static_cast<int>(i))));
  const WeightSequence g = WeightSequence::explicit_list(head, Scalar(1.0));
  auto ratio = [&](Natural n) { return modulus(larcher_residual(n, g)) / static_cast<double>(n); };
  // Averaged over a window to smooth the fluctuation.
  auto window = [&](Natural n) {
    double s = 0.0;
    for (Natural j = 0; j < 16; ++j) s += ratio(n + j * (n / 16));
    return s / 16.0;
  };
  EXPECT_LT(window(Natural{1} << 10), window(Natural{1} << 6));
  EXPECT_LT(window(Natural{1} << 14), window(Natural{1} << 10));
  EXPECT_THROW(larcher_residual(1, g), DomainError);
}

TEST(Sweeps, ReportFormat) {
  const SweepReport r = verify_theorem1(QWeight(Scalar::exact(2, 3)), 64, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checked, 64U);
  EXPECT_NE(r.summary().find("max residual 0/1, PASS"), std::string::npos) << r.summary();
}

TEST(Sweeps, WitnessIsSmallestFailingIndex) {
  // A tolerance below the float noise floor has to fail, and the report names where.
  const SweepReport r = verify_classic(4096, 0.0);
  if (!r.pass) {
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.summary().find("FAIL at " + std::to_string(*r.witness)), std::string::npos);
    const SweepReport shorter = verify_classic(*r.witness, 0.0);
    EXPECT_EQ(shorter.witness, r.witness);
    const SweepReport before = verify_classic(*r.witness - 1, 0.0);
    EXPECT_TRUE(before.pass);
  }
}

TEST(Sweeps, AllSweepsPassAtDeskScale) {
  EXPECT_TRUE(verify_dyadic(QWeight(Scalar::exact(1, 3)), 512, 0).pass);
  EXPECT_TRUE(verify_recursions(QWeight(Scalar::exact(-1, 2)), 512, 0).pass);
  EXPECT_TRUE(verify_corollary(QWeight(Scalar::exact(4)), 512, 1e-9).pass);
  EXPECT_TRUE(verify_larcher(Scalar::exact(2), 512, 1e-9).pass);
  EXPECT_TRUE(verify_vdc(512).pass);
  EXPECT_TRUE(verify_prop2(QWeight(Scalar::exact(-1)), 1, 8, 0).pass);
  EXPECT_THROW(verify_corollary(QWeight(Scalar(Complex(0, 1))), 16, 1e-9), ModeError);
}
