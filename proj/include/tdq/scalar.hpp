#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace tdq {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different numeric modes, or an order-dependent
/// operation was applied to a complex value.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical domain was violated
/// (non-contractive parameter, zero denominator, q = 1 where excluded, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class Mode { ExactRational, FloatReal, FloatComplex };

std::string_view mode_name(Mode m);

/// Higher of two modes in the promotion order ExactRational < FloatReal < FloatComplex.
Mode common_mode(Mode a, Mode b);

/**
 * One numeric value in exactly one of three modes.
 *
 * Exact payloads are canonical GMP rationals (lowest terms, positive
 * denominator). Binary arithmetic requires both operands in the same mode;
 * crossing modes goes through promote(), never implicitly.
 */
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational r);
  explicit Scalar(double x) : value_(x) {}
  explicit Scalar(Complex z) : value_(z) {}

  static Scalar exact(long num, long den = 1);
  static Scalar zero(Mode m) { return from_rational(Rational(0), m); }
  static Scalar one(Mode m) { return from_rational(Rational(1), m); }
  /// Embeds an exact constant into mode `m` (rounding if `m` is a float mode).
  static Scalar from_rational(const Rational& r, Mode m);
  static Scalar from_natural(std::uint64_t n, Mode m);

  Mode mode() const { return static_cast<Mode>(value_.index()); }
  bool is_exact() const { return mode() == Mode::ExactRational; }
  bool is_real() const { return mode() != Mode::FloatComplex; }
  bool is_zero() const;

  const Rational& rational() const;
  double real() const;  // FloatReal payload
  Complex complex() const;  // FloatComplex payload
  /// Value as a double; ModeError for complex.
  double to_double() const;
  /// Value as a complex double, any mode.
  Complex to_complex() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Same mode and identical payload. Float modes compare bitwise-equal values.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void require_same_mode(const Scalar& o, const char* op) const;

  std::variant<Rational, double, Complex> value_;
};

/// Lossy promotion along ExactRational -> FloatReal -> FloatComplex.
/// Demotion is a ModeError.
Scalar promote(const Scalar& s, Mode target);

/// |s| as a double; always >= 0 and zero iff s is zero.
double modulus(const Scalar& s);

/// |s| kept exact in ExactRational mode, FloatReal otherwise.
Scalar abs_value(const Scalar& s);

/// Sign of |s| - r, computed exactly in ExactRational mode.
int compare_modulus(const Scalar& s, const Rational& r);

/// Three-way comparison of two real scalars of the same mode.
int compare(const Scalar& a, const Scalar& b);

/// s^k by repeated squaring; s^0 = 1.
Scalar int_pow(const Scalar& s, std::uint64_t k);

/// Distance to the nearest integer, in [0, 1/2]. Exact for exact input.
Scalar tau(const Scalar& x);
Rational tau(const Rational& x);
double tau(double x);

/// Parses "p/q" (exact), decimal/scientific (float), or "RE(+|-)IMi" (complex).
Scalar parse_scalar(std::string_view text, Mode mode);

/// Canonical text: "p/q" or "p", %.17g decimals, "RE+IMi".
std::string render(const Scalar& s);
std::string render_double(double x);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace tdq
