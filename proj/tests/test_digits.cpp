#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdq/digits.hpp"

using namespace tdq;

namespace {

const Scalar q23 = Scalar::exact(2, 3);

Scalar poly(const Scalar& q, std::initializer_list<long> coeffs) {
  Scalar r = Scalar::zero(q.mode());
  unsigned e = 0;
  for (long c : coeffs) r += Scalar::from_rational(Rational(c), q.mode()) * int_pow(q, e++);
  return r;
}

}  // namespace

TEST(BinaryDigits, Examples) {
  EXPECT_TRUE(binary_digits(0).bits.empty());
  EXPECT_EQ(binary_digits(5).bits, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(binary_digits(6).bits, (std::vector<std::uint8_t>{0, 1, 1}));
  for (Natural n : {Natural{1}, Natural{12345}, ~Natural{0}}) EXPECT_EQ(binary_digits(n).value(), n);
}

TEST(SQ, Examples) {
  const QWeight q(q23);
  EXPECT_TRUE(s_q(0, q).is_zero());
  EXPECT_EQ(s_q(5, q), q23 + int_pow(q23, 3));
  EXPECT_EQ(s_q(3, QWeight(Scalar::exact(2))), Scalar::exact(6));
}

TEST(WeightedDigitSum, Examples) {
  EXPECT_EQ(weighted_digit_sum(7, WeightSequence::constant(Scalar::exact(1))), Scalar::exact(3));
  const QWeight q(q23);
  EXPECT_EQ(weighted_digit_sum(5, WeightSequence::q_geometric(q)), s_q(5, q));
  std::vector<Scalar> head;
  for (long v = 10; v <= 60; v += 10) head.push_back(Scalar::exact(v));
  EXPECT_EQ(weighted_digit_sum(6, WeightSequence::explicit_list(head, Scalar::exact(0))), Scalar::exact(50));
  EXPECT_THROW(WeightSequence::explicit_list({Scalar(1.0)}, Scalar::exact(1)), ModeError);
}

TEST(WeightSequence, Limits) {
  EXPECT_EQ(*WeightSequence::q_geometric(QWeight(q23)).limit(), Scalar::exact(0));
  EXPECT_EQ(*WeightSequence::q_geometric(QWeight(Scalar::exact(1))).limit(), Scalar::exact(1));
  EXPECT_FALSE(WeightSequence::q_geometric(QWeight(Scalar::exact(3, 2))).limit());
}

TEST(SQDirect, Examples) {
  const QWeight q(q23);
  EXPECT_TRUE(S_q_direct(1, q).is_zero());
  EXPECT_EQ(S_q_direct(4, q), poly(q23, {0, 2, 2}));
  EXPECT_EQ(S_q_direct(4, QWeight(Scalar::exact(2))), Scalar::exact(12));
  EXPECT_THROW(S_q_direct(0, q), DomainError);
}

TEST(SQPow2, Examples) {
  const QWeight q(q23);
  EXPECT_TRUE(S_q_pow2(0, q).is_zero());
  EXPECT_EQ(S_q_pow2(2, QWeight(Scalar::exact(2))), Scalar::exact(12));
  EXPECT_EQ(S_q_pow2(2, q), poly(q23, {0, 2, 2}));
  EXPECT_EQ(S_q_pow2(5, QWeight(Scalar::exact(1))), Scalar::exact(5 * 16));
}

TEST(SQRecursive, Examples) {
  const QWeight q(q23);
  EXPECT_EQ(S_q_recursive(2, q), q23);
  EXPECT_EQ(S_q_recursive(4, QWeight(Scalar::exact(2))), Scalar::exact(12));
  EXPECT_EQ(S_q_recursive(3, q), poly(q23, {0, 1, 1}));
}

class SQAgainstOracle : public ::testing::TestWithParam<std::pair<long, long>> {};

TEST_P(SQAgainstOracle, AllRoutesMatchBruteForce) {
  const auto [num, den] = GetParam();
  const mpq_class qr(num, den);
  const QWeight q(Scalar::exact(num, den));
  const Natural n_max = 1024;
  const auto expect = oracle::S_table(n_max, qr);
  const auto table = S_q_direct_table(n_max, q);
  for (Natural n = 1; n <= n_max; ++n) {
    ASSERT_EQ(table[n].rational(), expect[n]) << n;
    ASSERT_EQ(S_q_recursive(n, q).rational(), expect[n]) << n;
    ASSERT_EQ(s_q(n, q).rational(), oracle::s(n, qr)) << n;
  }
  EXPECT_EQ(S_q_direct(777, q).rational(), expect[777]);
  for (unsigned k = 0; k <= 10; ++k) EXPECT_EQ(S_q_pow2(k, q).rational(), expect[Natural{1} << k]) << k;
}

INSTANTIATE_TEST_SUITE_P(Weights, SQAgainstOracle,
                         ::testing::Values(std::pair{2L, 3L}, std::pair{-2L, 3L}, std::pair{1L, 2L},
                                           std::pair{-1L, 2L}, std::pair{1L, 3L}, std::pair{1L, 1L},
                                           std::pair{-1L, 1L}, std::pair{3L, 2L}, std::pair{4L, 1L},
                                           std::pair{-3L, 1L}));

TEST(SQRecursive, LargeArgumentsAgainstSplitting) {
  // S(n) over [0, 2^k + m) splits into S(2^k) plus the shifted block m q^{k+1} + S(m).
  std::mt19937_64 rng(3);
  const QWeight q(Scalar::exact(-2, 3));
  for (int i = 0; i < 200; ++i) {
    const unsigned k = 20 + rng() % 40;
    const Natural m = rng() % (Natural{1} << k);
    const Natural n = (Natural{1} << k) + m;
    const Scalar rhs = S_q_pow2(k, q) + Scalar::from_natural(m, Mode::ExactRational) * int_pow(q.q(), k + 1) +
                       (m == 0 ? Scalar::exact(0) : S_q_recursive(m, q));
    ASSERT_EQ(S_q_recursive(n, q), rhs) << n;
  }
}

TEST(SQ, FloatAndComplexModesTrackExact) {
  const QWeight qe(Scalar::exact(3, 4));
  const QWeight qf(Scalar(0.75));
  const std::complex<double> qc(0.5, 0.5);
  const QWeight qz{Scalar(qc)};
  const auto te = S_q_direct_table(300, qe);
  const auto tf = S_q_direct_table(300, qf);
  const auto oz = oracle::S_table(300, qc);
  for (Natural n = 1; n <= 300; ++n) {
    EXPECT_NEAR(tf[n].real(), te[n].to_double(), 1e-12 * n);
    EXPECT_LT(std::abs(S_q_recursive(n, qz).complex() - oz[n]), 1e-12 * n);
  }
}
