#include "tdq/dyadic.hpp"

#include <cmath>

namespace tdq {

DyadicRational DyadicRational::from_fraction(std::int64_t m, unsigned k) {
  if (k > kMaxExponent) throw DomainError("dyadic exponent exceeds 63");
  const std::uint64_t mask = k == 0 ? 0 : ((std::uint64_t{1} << k) - 1);
  DyadicRational d;
  d.integer_part_ = m >> k;  // arithmetic shift is floor division
  d.numerator_ = static_cast<std::uint64_t>(m) & mask;
  d.exponent_ = k;
  while (d.exponent_ > 0 && (d.numerator_ & 1U) == 0) {
    d.numerator_ >>= 1U;
    --d.exponent_;
  }
  if (d.numerator_ == 0) d.exponent_ = 0;
  return d;
}

DyadicRational DyadicRational::from_parts(std::int64_t integer_part, std::uint64_t numerator,
                                          unsigned exponent) {
  if (exponent > kMaxExponent) throw DomainError("dyadic exponent exceeds 63");
  const std::uint64_t carry = exponent == 0 ? numerator : numerator >> exponent;
  const std::uint64_t mask = exponent == 0 ? 0 : ((std::uint64_t{1} << exponent) - 1);
  DyadicRational d;
  d.integer_part_ = integer_part + static_cast<std::int64_t>(carry);
  d.numerator_ = numerator & mask;
  d.exponent_ = exponent;
  while (d.exponent_ > 0 && (d.numerator_ & 1U) == 0) {
    d.numerator_ >>= 1U;
    --d.exponent_;
  }
  if (d.numerator_ == 0) d.exponent_ = 0;
  return d;
}

DyadicRational DyadicRational::from_rational(const Rational& r) {
  const Integer& den = r.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) {
    throw DomainError("not a dyadic rational: " + r.get_str());
  }
  const std::size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  if (bits > kMaxExponent) throw DomainError("dyadic exponent exceeds 63");
  Integer fl, rem;
  mpz_fdiv_qr(fl.get_mpz_t(), rem.get_mpz_t(), r.get_num_mpz_t(), den.get_mpz_t());
  if (!fl.fits_slong_p()) throw DomainError("dyadic integer part out of range");
  DyadicRational d;
  d.integer_part_ = fl.get_si();
  d.numerator_ = rem.get_ui();
  d.exponent_ = static_cast<unsigned>(bits);
  return d;
}

DyadicRational DyadicRational::from_scalar(const Scalar& s) {
  if (!s.is_exact()) throw ModeError("dyadic rationals are built from exact scalars");
  return from_rational(s.rational());
}

Rational DyadicRational::to_rational() const {
  Integer num(static_cast<unsigned long>(numerator_));
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent_);
  Rational frac(num, den);
  frac.canonicalize();
  return Rational(Integer(static_cast<long>(integer_part_))) + frac;
}

double DyadicRational::to_double() const {
  return static_cast<double>(integer_part_) +
         std::ldexp(static_cast<double>(numerator_), -static_cast<int>(exponent_));
}

Scalar tau(const DyadicRational& x) {
  // tau depends only on the fractional part m/2^K.
  if (x.exponent() == 0) return Scalar(Rational(0));
  const std::uint64_t half = std::uint64_t{1} << (x.exponent() - 1);
  const std::uint64_t m = x.numerator();
  const std::uint64_t dist = m <= half ? m : (std::uint64_t{1} << x.exponent()) - m;
  return Scalar(DyadicRational::from_parts(0, dist, x.exponent()).to_rational());
}

std::string render(const DyadicRational& x) { return x.to_rational().get_str(); }

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Contractive:
      return "contractive";
    case Regime::Boundary:
      return "boundary";
    case Regime::Expanding:
      return "expanding";
  }
  return "?";
}

QWeight::QWeight(Scalar q) : q_(std::move(q)) {
  if (q_.is_zero()) throw DomainError("q must be non-zero");
  a_ = Scalar::one(q_.mode()) / (Scalar::from_rational(Rational(2), q_.mode()) * q_);
  const int c = compare_modulus(q_, Rational(1, 2));
  regime_ = c > 0 ? Regime::Contractive : (c == 0 ? Regime::Boundary : Regime::Expanding);
  is_one_ = q_ == Scalar::one(q_.mode());
}

QWeight QWeight::from_a(const Scalar& a) {
  if (a.is_zero()) throw DomainError("a must be non-zero");
  return QWeight(Scalar::one(a.mode()) / (Scalar::from_rational(Rational(2), a.mode()) * a));
}

}  // namespace tdq
