#pragma once

#include <cstdint>
#include <string>

#include "tdq/scalar.hpp"

namespace tdq {

/// Non-negative integer argument (n, digit positions, window lengths).
using Natural = std::uint64_t;

/**
 * x = integerPart + numerator / 2^exponent in canonical form: the numerator
 * is odd, or numerator = exponent = 0. This is the binary expansion that
 * ends in zeros, so every dyadic series over 2^n x terminates after
 * `exponent` terms.
 */
class DyadicRational {
 public:
  static constexpr unsigned kMaxExponent = 63;

  DyadicRational() = default;

  /// m / 2^k for any signed m; reduces to canonical form.
  static DyadicRational from_fraction(std::int64_t m, unsigned k);
  static DyadicRational from_parts(std::int64_t integer_part, std::uint64_t numerator,
                                   unsigned exponent);
  /// ModeError for float input, DomainError if the denominator is not a power of two.
  static DyadicRational from_scalar(const Scalar& s);
  static DyadicRational from_rational(const Rational& r);

  std::int64_t integer_part() const { return integer_part_; }
  std::uint64_t numerator() const { return numerator_; }
  unsigned exponent() const { return exponent_; }

  Rational to_rational() const;
  Scalar to_scalar() const { return Scalar(to_rational()); }
  double to_double() const;

  /// Fractional part in [0, 1).
  DyadicRational fractional() const { return from_parts(0, numerator_, exponent_); }

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;

 private:
  std::int64_t integer_part_ = 0;
  std::uint64_t numerator_ = 0;
  unsigned exponent_ = 0;
};

Scalar tau(const DyadicRational& x);

std::string render(const DyadicRational& x);

enum class Regime { Contractive, Boundary, Expanding };

std::string_view regime_name(Regime r);

/**
 * The digit weight q together with a = 1/(2q). The regime classifies |q|
 * against 1/2, i.e. whether |a| < 1 and the de Rham system for the
 * Takagi-Landsberg function is a contraction.
 */
class QWeight {
 public:
  /// DomainError for q = 0 (a would be undefined).
  explicit QWeight(Scalar q);
  static QWeight from_a(const Scalar& a);

  const Scalar& q() const { return q_; }
  const Scalar& a() const { return a_; }
  Regime regime() const { return regime_; }
  bool is_one() const { return is_one_; }
  Mode mode() const { return q_.mode(); }
  bool contractive() const { return regime_ == Regime::Contractive; }

 private:
  Scalar q_;
  Scalar a_;
  Regime regime_;
  bool is_one_;
};

}  // namespace tdq
