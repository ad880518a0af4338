#include "tdq/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <regex>

namespace tdq {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::ExactRational:
      return "exact";
    case Mode::FloatReal:
      return "float";
    case Mode::FloatComplex:
      return "complex";
  }
  return "?";
}

Mode common_mode(Mode a, Mode b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

Scalar::Scalar(Rational r) {
  r.canonicalize();
  value_ = std::move(r);
}

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::from_rational(const Rational& r, Mode m) {
  switch (m) {
    case Mode::ExactRational:
      return Scalar(r);
    case Mode::FloatReal:
      return Scalar(r.get_d());
    case Mode::FloatComplex:
      return Scalar(Complex(r.get_d(), 0.0));
  }
  throw ModeError("unknown mode");
}

Scalar Scalar::from_natural(std::uint64_t n, Mode m) {
  return from_rational(Rational(Integer(static_cast<unsigned long>(n))), m);
}

bool Scalar::is_zero() const {
  switch (mode()) {
    case Mode::ExactRational:
      return sgn(std::get<Rational>(value_)) == 0;
    case Mode::FloatReal:
      return std::get<double>(value_) == 0.0;
    case Mode::FloatComplex:
      return std::get<Complex>(value_) == Complex(0.0, 0.0);
  }
  return false;
}

const Rational& Scalar::rational() const {
  if (mode() != Mode::ExactRational) throw ModeError("scalar is not an exact rational");
  return std::get<Rational>(value_);
}

double Scalar::real() const {
  if (mode() != Mode::FloatReal) throw ModeError("scalar is not a float real");
  return std::get<double>(value_);
}

Complex Scalar::complex() const {
  if (mode() != Mode::FloatComplex) throw ModeError("scalar is not a float complex");
  return std::get<Complex>(value_);
}

double Scalar::to_double() const {
  switch (mode()) {
    case Mode::ExactRational:
      return std::get<Rational>(value_).get_d();
    case Mode::FloatReal:
      return std::get<double>(value_);
    case Mode::FloatComplex:
      break;
  }
  throw ModeError("complex value has no real ordering");
}

Complex Scalar::to_complex() const {
  if (mode() == Mode::FloatComplex) return std::get<Complex>(value_);
  return Complex(to_double(), 0.0);
}

void Scalar::require_same_mode(const Scalar& o, const char* op) const {
  if (mode() != o.mode()) {
    throw ModeError(std::string("mode mismatch in ") + op + ": " +
                    std::string(mode_name(mode())) + " vs " + std::string(mode_name(o.mode())));
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(o, "+");
  std::visit([&](auto& lhs) { lhs += std::get<std::decay_t<decltype(lhs)>>(o.value_); }, value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(o, "-");
  std::visit([&](auto& lhs) { lhs -= std::get<std::decay_t<decltype(lhs)>>(o.value_); }, value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(o, "*");
  std::visit([&](auto& lhs) { lhs *= std::get<std::decay_t<decltype(lhs)>>(o.value_); }, value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(o, "/");
  if (mode() == Mode::ExactRational && o.is_zero()) throw DomainError("division by zero");
  std::visit([&](auto& lhs) { lhs /= std::get<std::decay_t<decltype(lhs)>>(o.value_); }, value_);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  std::visit([](auto& v) { v = -v; }, r.value_);
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) return false;
  return a.value_ == b.value_;
}

Scalar promote(const Scalar& s, Mode target) {
  if (s.mode() == target) return s;
  if (static_cast<int>(target) < static_cast<int>(s.mode())) {
    throw ModeError("cannot demote " + std::string(mode_name(s.mode())) + " to " +
                    std::string(mode_name(target)));
  }
  if (target == Mode::FloatReal) return Scalar(s.to_double());
  return Scalar(s.to_complex());
}

double modulus(const Scalar& s) {
  switch (s.mode()) {
    case Mode::ExactRational:
      return Rational(abs(s.rational())).get_d();
    case Mode::FloatReal:
      return std::abs(s.real());
    case Mode::FloatComplex:
      return std::abs(s.complex());
  }
  return 0.0;
}

Scalar abs_value(const Scalar& s) {
  if (s.is_exact()) return Scalar(Rational(abs(s.rational())));
  return Scalar(modulus(s));
}

int compare_modulus(const Scalar& s, const Rational& r) {
  auto sign = [](auto d) { return (d > 0) - (d < 0); };
  switch (s.mode()) {
    case Mode::ExactRational:
      return sign(cmp(abs(s.rational()), r));
    case Mode::FloatReal:
      return sign(std::abs(s.real()) - r.get_d());
    case Mode::FloatComplex: {
      const double rd = r.get_d();
      return sign(std::norm(s.complex()) - rd * rd);
    }
  }
  return 0;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw ModeError("mode mismatch in compare");
  if (a.is_exact()) {
    const int c = cmp(a.rational(), b.rational());
    return (c > 0) - (c < 0);
  }
  const double x = a.to_double(), y = b.to_double();
  return (x > y) - (x < y);
}

Scalar int_pow(const Scalar& s, std::uint64_t k) {
  if (s.is_exact()) {
    // Powers of a reduced fraction stay reduced.
    Integer num, den;
    const Rational& r = s.rational();
    const unsigned long e = static_cast<unsigned long>(k);
    mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), e);
    Rational out;
    mpq_set_num(out.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(out.get_mpq_t(), den.get_mpz_t());
    return Scalar(std::move(out));
  }
  Scalar result = Scalar::one(s.mode());
  Scalar base = s;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

Rational tau(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational frac = x - Rational(fl);
  Rational other = Rational(1) - frac;
  return frac <= other ? frac : other;
}

double tau(double x) { return std::abs(x - std::nearbyint(x)); }

Scalar tau(const Scalar& x) {
  switch (x.mode()) {
    case Mode::ExactRational:
      return Scalar(tau(x.rational()));
    case Mode::FloatReal:
      return Scalar(tau(x.real()));
    case Mode::FloatComplex:
      break;
  }
  throw ModeError("tau requires a real argument");
}

namespace {

const std::regex& rational_grammar() {
  static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
  return re;
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (!std::regex_match(s, rational_grammar())) {
    throw ParseError("not a rational literal: '" + s + "'");
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("not a rational literal: '" + s + "'");
  if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

double parse_real(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  if (std::regex_match(std::string(text), rational_grammar())) {
    return parse_rational(text).get_d();
  }
  std::string_view body = text;
  if (body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
    throw ParseError("not a real literal: '" + std::string(text) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  if (text.back() != 'i') return Complex(parse_real(text), 0.0);
  std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string_view re_part, im_part = body;
  if (split != std::string_view::npos) {
    re_part = body.substr(0, split);
    im_part = body.substr(split);
  }
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_part);
  }
  const double re = re_part.empty() ? 0.0 : parse_real(re_part);
  return Complex(re, im);
}

}  // namespace

Scalar parse_scalar(std::string_view text, Mode mode) {
  switch (mode) {
    case Mode::ExactRational:
      return Scalar(parse_rational(text));
    case Mode::FloatReal:
      return Scalar(parse_real(text));
    case Mode::FloatComplex:
      return Scalar(parse_complex(text));
  }
  throw ParseError("unknown mode");
}

std::string render_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render(const Scalar& s) {
  switch (s.mode()) {
    case Mode::ExactRational:
      return s.rational().get_str();
    case Mode::FloatReal:
      return render_double(s.real());
    case Mode::FloatComplex: {
      const Complex z = s.complex();
      std::string out = render_double(z.real());
      const bool neg = std::signbit(z.imag());
      out += neg ? '-' : '+';
      out += render_double(std::abs(z.imag()));
      out += 'i';
      return out;
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << render(s); }

}  // namespace tdq
