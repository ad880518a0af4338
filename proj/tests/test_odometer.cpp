#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdq/odometer.hpp"

using namespace tdq;

namespace {

const Scalar q23 = Scalar::exact(2, 3);

}  // namespace

TEST(Gq, Examples) {
  const QWeight q(q23);
  for (unsigned k = 0; k < 20; ++k) EXPECT_TRUE(G_q(Natural{1} << k, q).is_zero()) << k;
  EXPECT_EQ(G_q(3, q), F_q(DyadicRational::from_fraction(1, 1), q));
}

TEST(Lemma1, Examples) {
  const QWeight q(q23);
  const Lemma1Point p1 = lemma1_F_of(1, q);
  EXPECT_EQ(p1.x, DyadicRational::from_fraction(0, 0));
  EXPECT_TRUE(p1.value.is_zero());
  const Lemma1Point p3 = lemma1_F_of(3, q);
  EXPECT_EQ(p3.x, DyadicRational::from_fraction(1, 1));
  EXPECT_EQ(p3.value, F_q(p3.x, q));
  const Lemma1Point p6 = lemma1_F_of(6, q);
  EXPECT_EQ(p6.x, p3.x);
  EXPECT_EQ(p6.value, p3.value);
}

TEST(Lemma1, GqEqualsFqAtEveryN) {
  for (const Scalar& qs : {q23, Scalar::exact(-1), Scalar::exact(5, 2), Scalar::exact(-3, 4)}) {
    const QWeight q(qs);
    for (Natural n = 1; n <= 2048; ++n) {
      const Lemma1Point p = lemma1_F_of(n, q);
      ASSERT_EQ(p.value, F_q(p.x, q)) << n;
    }
  }
}

TEST(PhiCurve, Examples) {
  const QWeight q(q23);
  const auto grid = dyadic_grid(3);
  const std::vector<Scalar> zeros(9, Scalar::exact(0));
  const FluctuationCurve flat = phi_curve(zeros, 8, grid, Normalizer::max_abs());
  EXPECT_EQ(flat.R, Scalar::exact(1));
  for (const auto& v : flat.values) EXPECT_TRUE(v.is_zero());

  const auto sums = S_q_direct_table(4, q);
  const std::vector<Scalar> half{Scalar::exact(0), Scalar::exact(1, 2), Scalar::exact(1)};
  const FluctuationCurve c = phi_curve(sums, 4, half, Normalizer::fixed(Scalar::exact(2) * q23));
  EXPECT_TRUE(c.values[0].is_zero());
  EXPECT_EQ(c.values[1], -q23 / Scalar::exact(2));
  EXPECT_TRUE(c.values[2].is_zero());

  EXPECT_THROW(phi_curve(sums, 4, std::vector<Scalar>{}, Normalizer::max_abs()), DomainError);
  EXPECT_THROW(phi_curve(sums, 4, std::vector<Scalar>{Scalar::exact(2)}, Normalizer::max_abs()), DomainError);
}

TEST(PhiCurve, InterpolatesLinearly) {
  const std::vector<Scalar> sums{Scalar::exact(0), Scalar::exact(5), Scalar::exact(2)};
  const std::vector<Scalar> grid{Scalar::exact(1, 4)};
  // S(1/2) = 5/2 by interpolation, so phi = 5/2 - (1/4) 2.
  const FluctuationCurve c = phi_curve(sums, 2, grid, Normalizer::fixed(Scalar::exact(1)));
  EXPECT_EQ(c.values[0], Scalar::exact(2));
}

TEST(Prop2, Examples) {
  for (const Scalar& qs : {q23, Scalar::exact(-1), Scalar::exact(3, 2)}) {
    const Prop2Result r = prop2_exact(QWeight(qs), 2);
    ASSERT_EQ(r.curve.grid.size(), 3U);
    EXPECT_TRUE(r.curve.values[0].is_zero());
    EXPECT_EQ(r.curve.values[1], -qs / Scalar::exact(2));
    EXPECT_TRUE(r.max_residual.is_zero());
  }
  const Prop2Result z = prop2_exact(QWeight(Scalar(Complex(0, 1))), 4);
  EXPECT_EQ(z.curve.grid.size(), 9U);
  EXPECT_LE(z.max_residual.to_double(), 1e-10);
  EXPECT_THROW(prop2_exact(QWeight(Scalar::exact(1, 3)), 4), DomainError);
}

TEST(Prop2, MatchesOracleCurve) {
  const mpq_class qr(-4, 5);
  const QWeight q{Scalar(qr)};
  for (unsigned N = 1; N <= 9; ++N) {
    const std::uint64_t l = std::uint64_t{1} << N;
    const auto S = oracle::S_table(l, qr);
    const Prop2Result r = prop2_exact(q, N);
    mpq_class R = 1;
    for (unsigned i = 1; i < N; ++i) R *= 2 * qr;
    for (std::uint64_t j = 0; j < r.curve.grid.size(); ++j) {
      const std::uint64_t idx = j * 2;  // t_j = j / 2^{N-1}, t_j l = 2j
      const mpq_class t = oracle::dyadic(static_cast<std::int64_t>(j), N - 1);
      const mpq_class phi = (S[idx] - t * S[l]) / R;
      ASSERT_EQ(r.curve.values[j].rational(), phi) << N << ' ' << j;
      ASSERT_EQ(phi, mpq_class(-qr * oracle::takagi(t, mpq_class(1 / (2 * qr))))) << N << ' ' << j;
    }
  }
}

TEST(Odometer, StepExamples) {
  EXPECT_EQ(odometer_step(OdometerPoint::parse("110")).to_string(), "001");
  EXPECT_EQ(odometer_step(OdometerPoint{}).to_string(), "1");
  EXPECT_EQ(odometer_step(OdometerPoint::parse("01")).to_string(), "11");
  EXPECT_THROW(OdometerPoint::parse("012"), ParseError);
}

TEST(Odometer, OverflowPolicy) {
  OdometerPoint w = OdometerPoint::parse("11", OverflowPolicy::Error);
  EXPECT_THROW(w.step(), DomainError);
  EXPECT_EQ(w.to_string(), "11");
  OdometerPoint g = OdometerPoint::parse("11");
  EXPECT_EQ(g.step(), 2U);
  EXPECT_EQ(g.to_string(), "001");
}

TEST(Odometer, StepIsIncrement) {
  OdometerPoint w = OdometerPoint::from_natural(0);
  for (Natural n = 1; n <= 5000; ++n) {
    w.step();
    ASSERT_EQ(w, OdometerPoint::from_natural(n)) << n;
  }
}

TEST(Odometer, SqPoint) {
  const QWeight q(q23);
  EXPECT_TRUE(s_q_point(OdometerPoint{}, q).is_zero());
  EXPECT_EQ(s_q_point(OdometerPoint::parse("1"), q), q23);
  EXPECT_EQ(s_q_point(OdometerPoint::parse("101"), q), s_q(5, q));
}

TEST(ErgodicSum, Examples) {
  const QWeight q(q23);
  EXPECT_EQ(ergodic_sum(OdometerPoint{}, q, 4), S_q_direct(4, q));
  const OdometerPoint w = OdometerPoint::parse("0110101");
  EXPECT_EQ(ergodic_sum(w, q, 1), s_q_point(w, q));
  EXPECT_EQ(ergodic_sum(OdometerPoint::parse("1"), q, 2), q23 + q23 * q23);
}

TEST(ErgodicSum, IncrementalMatchesPointwise) {
  std::mt19937_64 rng(21);
  const QWeight q(Scalar::exact(-3, 5));
  for (int trial = 0; trial < 5; ++trial) {
    const OdometerPoint w0 = OdometerPoint::random(rng, 12);
    const auto sums = ergodic_partial_sums(w0, q, 5000);
    OdometerPoint w = w0;
    Scalar acc = Scalar::exact(0);
    for (Natural j = 0; j < 5000; ++j) {
      ASSERT_EQ(sums[j], acc) << j;
      acc += s_q_point(w, q);
      w.step();
    }
    EXPECT_EQ(sums[5000], acc);
  }
}

TEST(Birkhoff, Examples) {
  const QWeight q(q23);
  EXPECT_EQ(expected_s_q(q), Scalar::exact(1));
  for (unsigned k = 0; k <= 12; ++k) {
    const Scalar n = Scalar::from_natural(Natural{1} << k, Mode::ExactRational);
    EXPECT_EQ(birkhoff_deviation(OdometerPoint{}, q, Natural{1} << k), S_q_pow2(k, q) / n - Scalar::exact(1));
  }
  EXPECT_THROW(birkhoff_deviation(OdometerPoint{}, QWeight(Scalar::exact(1, 3)), 8), DomainError);
  EXPECT_THROW(birkhoff_deviation(OdometerPoint{}, QWeight(Scalar::exact(3, 2)), 8), DomainError);
}

TEST(Birkhoff, RandomPointsConverge) {
  std::mt19937_64 rng(99);
  const QWeight q(Scalar(2.0 / 3.0));
  for (int i = 0; i < 4; ++i) {
    const OdometerPoint w = OdometerPoint::random(rng);
    EXPECT_LT(modulus(birkhoff_deviation(w, q, Natural{1} << 18)), 0.01);
  }
}

TEST(SupDistance, Examples) {
  const QWeight q(q23);
  EXPECT_TRUE(sup_distance_to_limit(prop2_exact(q, 6).curve, q).is_zero());

  const auto grid = dyadic_grid(4);
  const std::vector<Scalar> zeros(17, Scalar::exact(0));
  const FluctuationCurve flat = phi_curve(zeros, 16, grid, Normalizer::max_abs());
  Rational best = 0;
  for (const auto& t : grid) {
    const Rational v = abs(q23.rational() * takagi_dyadic_exact(DyadicRational::from_scalar(t), q.a()).rational());
    if (v > best) best = v;
  }
  EXPECT_EQ(sup_distance_to_limit(flat, q), Scalar(best));

  for (unsigned N = 2; N <= 10; ++N) {
    const Natural l = Natural{1} << N;
    const auto sums = ergodic_partial_sums(OdometerPoint{}, q, l);
    const FluctuationCurve c =
        phi_curve(sums, l, dyadic_grid(N), Normalizer::fixed(int_pow(Scalar::exact(2) * q23, N - 1)));
    EXPECT_TRUE(sup_distance_to_limit(c, q).is_zero()) << N;
  }
}

TEST(Stabilizer, ZeroPointIsExactAtPowersOfTwo) {
  const QWeight q(q23);
  std::vector<Natural> cands;
  for (unsigned k = 4; k <= 10; ++k) cands.push_back(Natural{1} << k);
  const auto grid = dyadic_grid(3);
  const StabilizerReport r = stabilizer_search(OdometerPoint{}, q, cands, grid);
  ASSERT_EQ(r.profile.size(), cands.size());
  for (const auto& e : r.profile) EXPECT_LE(e.distance, 1e-15) << e.l;
  EXPECT_EQ(r.best_l, 16U);
  EXPECT_THROW(stabilizer_search(OdometerPoint{}, q, cands, std::vector<Scalar>{}), DomainError);
}

TEST(Stabilizer, DeterministicForFixedInput) {
  const QWeight q(q23);
  const std::vector<Natural> cands{4, 8, 16, 32, 64, 128, 256};
  const auto grid = dyadic_grid(3);
  const OdometerPoint w = OdometerPoint::parse("1");
  const StabilizerReport a = stabilizer_search(w, q, cands, grid);
  const StabilizerReport b = stabilizer_search(w, q, cands, grid);
  ASSERT_EQ(a.profile.size(), b.profile.size());
  for (std::size_t i = 0; i < a.profile.size(); ++i) EXPECT_EQ(a.profile[i].distance, b.profile[i].distance);
  EXPECT_LE(a.profile.back().distance, a.profile.front().distance);
}
