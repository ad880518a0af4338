#include "tdq/trollope.hpp"

#include <cmath>

namespace tdq {

namespace {

Scalar lift(const Rational& r, Mode m) { return Scalar::from_rational(r, m); }

void require_theorem_domain(const QWeight& q) {
  if (q.is_one()) throw DomainError("q = 1 is the classic case; use classic_formula");
  if (!q.contractive()) throw DomainError("the weighted formula requires |q| > 1/2");
}

}  // namespace

LogDecomposition LogDecomposition::of(Natural n) {
  LogDecomposition d;
  d.n = n;
  d.k = floor_log2(n);
  d.p = Natural{1} << d.k;
  d.u = std::log2(static_cast<double>(n)) - static_cast<double>(d.k);
  if (d.u < 0.0) d.u = 0.0;
  d.x = DyadicRational::from_fraction(static_cast<std::int64_t>(n - d.p), d.k);
  return d;
}

Scalar theorem1_rhs(Natural n, const QWeight& q) {
  require_theorem_domain(q);
  if (n == 0) throw DomainError("n must be positive");
  const Mode m = q.mode();
  const unsigned k = floor_log2(n);
  const Scalar one = Scalar::one(m);
  const Scalar& qq = q.q();
  const Scalar qk = int_pow(qq, k);
  const Scalar bracket = (one - qk * qq) / (one - qq) - qk * hat_F_q_log2(n, q);
  return qq * lift(Rational(1, 2), m) * bracket;
}

Scalar dyadic_formula(Natural n, const QWeight& q) {
  if (q.is_one()) throw DomainError("q = 1 is the classic case; use classic_formula");
  if (n == 0) throw DomainError("n must be positive");
  const Mode m = q.mode();
  const unsigned k = floor_log2(n);
  const Scalar one = Scalar::one(m);
  const Scalar& qq = q.q();
  const Scalar two_q = lift(Rational(2), m) * qq;

  Scalar sum = Scalar::zero(m);
  Scalar power = one;
  for (unsigned i = 1; i <= k + 1; ++i) {
    power *= two_q;
    sum += power * promote(tau(DyadicRational::from_fraction(static_cast<std::int64_t>(n), i)), m);
  }
  const Scalar half = lift(Rational(1, 2), m);
  return qq * half * (one - int_pow(qq, k + 1)) / (one - qq) -
         sum / (lift(Rational(2), m) * Scalar::from_natural(n, m));
}

double classic_formula(Natural n) {
  if (n == 0) throw DomainError("n must be positive");
  const double log2n = std::log2(static_cast<double>(n));
  return 0.5 * log2n + 0.5 * tilde_F_1_log2(n);
}

Scalar vdc_star_discrepancy(Natural n) {
  if (n == 0) throw DomainError("n must be positive");
  const unsigned k = floor_log2(n);
  Rational sum(1);
  for (unsigned j = 1; j <= k; ++j) {
    sum += tau(DyadicRational::from_fraction(static_cast<std::int64_t>(n), j)).rational();
  }
  return Scalar(sum / Rational(Integer(static_cast<unsigned long>(n))));
}

Scalar larcher_residual(Natural n, const WeightSequence& gamma, double tol) {
  if (!gamma.limit()) throw DomainError("weight sequence has no declared limit");
  if (n < 2) throw DomainError("Larcher residual needs n >= 2");
  const Mode m = gamma.mode() == Mode::FloatComplex ? Mode::FloatComplex : Mode::FloatReal;
  const unsigned k = floor_log2(n);

  Scalar head = Scalar::zero(gamma.mode());
  for (unsigned i = 0; i <= k; ++i) head += gamma.weight(i);
  const Scalar nn = Scalar::from_natural(n, m);
  const Scalar total = promote(weighted_cumulative_sum(n, gamma), m);
  const Scalar trend = nn * lift(Rational(1, 2), m) * promote(head, m);
  const Scalar periodic = nn * G_tilde_gamma(std::log2(static_cast<double>(n)), *gamma.limit(), tol);
  return total - trend - promote(periodic, m);
}

}  // namespace tdq
