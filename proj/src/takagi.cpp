#include "tdq/takagi.hpp"

#include <algorithm>
#include <cmath>

namespace tdq {

namespace {

constexpr std::size_t kMaxSeriesTerms = 100'000'000;

Scalar lift(const Rational& r, Mode m) { return Scalar::from_rational(r, m); }

Rational pow2(unsigned k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rational(p);
}

// tau(2^n * m / 2^K) for the fractional numerator m.
Rational tau_shifted(std::uint64_t m, unsigned K, unsigned n) {
  if (n >= K) return Rational(0);
  const std::uint64_t full = K == 64 ? 0 : (std::uint64_t{1} << K);
  const std::uint64_t shifted = (m << n) & (full - 1);
  const std::uint64_t half = std::uint64_t{1} << (K - 1);
  const std::uint64_t dist = shifted <= half ? shifted : full - shifted;
  Rational r(Integer(static_cast<unsigned long>(dist)), Integer(pow2(K).get_num()));
  r.canonicalize();
  return r;
}

bool in_unit_interval(const DyadicRational& x) {
  return (x.integer_part() == 0) || (x.integer_part() == 1 && x.numerator() == 0);
}

double g_sup(const DeRhamSystem& sys) {
  if (sys.g_bound) return *sys.g_bound;
  const Mode m = sys.mode();
  const Scalar zero = Scalar::zero(m), one = Scalar::one(m);
  return std::max({modulus(sys.g0(zero)), modulus(sys.g0(one)), modulus(sys.g1(zero)),
                   modulus(sys.g1(one))});
}

void require_valid(const DeRhamSystem& sys) {
  if (!sys.contractive()) throw DomainError("de Rham system is not contractive");
  const Scalar residual = sys.consistency_residual();
  if (residual.is_exact() ? !residual.is_zero() : modulus(residual) > 1e-12) {
    throw DomainError("de Rham system violates the consistency condition (residual " +
                      render(residual) + ")");
  }
}

}  // namespace

std::size_t takagi_series_terms(double abs_a, double tol) {
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  if (!(abs_a < 1.0)) throw DomainError("Takagi series requires |a| < 1");
  if (abs_a == 0.0) return 0;
  std::size_t n = 0;
  double bound = abs_a / (2.0 * (1.0 - abs_a));
  while (bound > tol) {
    bound *= abs_a;
    if (++n > kMaxSeriesTerms) throw DomainError("Takagi series needs too many terms");
  }
  return n;
}

Scalar takagi_series(const Scalar& x, const Scalar& a, double tol) {
  if (!x.is_real()) throw ModeError("Takagi series takes a real abscissa");
  if (compare_modulus(a, Rational(1)) >= 0) {
    throw DomainError("Takagi series is non-contractive for |a| >= 1");
  }
  const std::size_t terms = takagi_series_terms(modulus(a), tol);
  const Mode work = a.is_real() ? Mode::FloatReal : Mode::FloatComplex;
  const Scalar af = promote(a, work);

  Scalar sum = Scalar::zero(work);
  Scalar power = Scalar::one(work);
  if (x.is_exact()) {
    Rational y = x.rational();
    for (std::size_t n = 0; n <= terms; ++n) {
      sum += power * lift(tau(y), work);
      y *= 2;
      power *= af;
    }
  } else {
    // Doubling and subtracting 1 are exact in binary floating point.
    double y = x.real() - std::floor(x.real());
    for (std::size_t n = 0; n <= terms && y != 0.0; ++n) {
      sum += power * promote(Scalar(std::min(y, 1.0 - y)), work);
      y = 2.0 * y;
      if (y >= 1.0) y -= 1.0;
      power *= af;
    }
  }
  return sum;
}

Scalar takagi_dyadic_exact(const DyadicRational& x, const Scalar& a) {
  const Mode m = a.mode();
  Scalar sum = Scalar::zero(m);
  Scalar power = Scalar::one(m);
  const unsigned K = x.exponent();
  for (unsigned n = 0; n < K; ++n) {
    sum += power * lift(tau_shifted(x.numerator(), K, n), m);
    power *= a;
  }
  return sum;
}

Scalar takagi_alt_dyadic(Natural n, const Scalar& a) {
  if (a.is_zero()) throw DomainError("alternative dyadic route requires a != 0");
  if (n == 0) throw DomainError("alternative dyadic route requires n >= 1");
  const unsigned k = floor_log2(n);
  if (k + 1 > DyadicRational::kMaxExponent) throw DomainError("n too large");
  const Mode m = a.mode();
  // Horner in a: sum_{i=1}^{k+1} a^{k+1-i} tau(n / 2^i).
  Scalar sum = Scalar::zero(m);
  for (unsigned i = 1; i <= k + 1; ++i) {
    const DyadicRational y = DyadicRational::from_fraction(static_cast<std::int64_t>(n), i);
    sum = sum * a + promote(tau(y), m);
  }
  return sum;
}

DeRhamSystem DeRhamSystem::takagi(const Scalar& a) {
  DeRhamSystem sys;
  sys.a0 = a;
  sys.a1 = a;
  sys.g0 = [](const Scalar& x) { return x * lift(Rational(1, 2), x.mode()); };
  sys.g1 = [](const Scalar& x) {
    return (Scalar::one(x.mode()) - x) * lift(Rational(1, 2), x.mode());
  };
  sys.g_bound = 0.5;
  return sys;
}

DeRhamSystem DeRhamSystem::f_q(const QWeight& q) {
  DeRhamSystem sys;
  sys.a0 = q.a();
  sys.a1 = q.a();
  const Scalar qq = q.q();
  sys.g0 = [qq](const Scalar& x) {
    const Mode m = x.mode();
    const Scalar qm = promote(qq, m);
    return (lift(Rational(2), m) * qm - lift(Rational(3), m)) * x * lift(Rational(1, 4), m);
  };
  sys.g1 = [qq](const Scalar& x) {
    const Mode m = x.mode();
    const Scalar qm = promote(qq, m);
    return (lift(Rational(2), m) * qm - Scalar::one(m)) * (x + Scalar::one(m)) *
           lift(Rational(1, 4), m);
  };
  const double qf_mod_a = std::abs(2.0 * q.q().to_complex() - 3.0) / 4.0;
  const double qf_mod_b = std::abs(2.0 * q.q().to_complex() - 1.0) / 2.0;
  sys.g_bound = std::max(qf_mod_a, qf_mod_b);
  return sys;
}

double DeRhamSystem::rho() const { return std::max(modulus(a0), modulus(a1)); }

Scalar DeRhamSystem::f0() const {
  const Mode m = mode();
  return g0(Scalar::zero(m)) / (Scalar::one(m) - promote(a0, m));
}

Scalar DeRhamSystem::f1() const {
  const Mode m = mode();
  return g1(Scalar::one(m)) / (Scalar::one(m) - promote(a1, m));
}

Scalar DeRhamSystem::consistency_residual() const {
  const Mode m = mode();
  const Scalar zero = Scalar::zero(m), one = Scalar::one(m);
  const Scalar b0 = promote(a0, m), b1 = promote(a1, m);
  return b0 * g1(one) / (one - b1) + g0(one) - b1 * g0(zero) / (one - b0) - g1(zero);
}

DeRhamValue derham_eval(const DeRhamSystem& sys, const DyadicRational& x, unsigned depth) {
  if (!in_unit_interval(x)) throw DomainError("de Rham evaluation needs x in [0, 1]");
  if (x.exponent() > depth) return derham_eval(sys, x.to_double(), depth);
  require_valid(sys);
  const Mode m = sys.mode();
  const Scalar a0 = promote(sys.a0, m), a1 = promote(sys.a1, m);

  Scalar acc = Scalar::zero(m);
  Scalar coef = Scalar::one(m);
  if (x.integer_part() == 1) return {sys.f1(), 0.0};

  const unsigned K = x.exponent();
  const std::uint64_t mask = K == 0 ? 0 : (K == 64 ? ~0ULL : (std::uint64_t{1} << K) - 1);
  std::uint64_t num = x.numerator();
  // Leading binary digit of num/2^K selects the branch; the remainder is 2y - d.
  for (unsigned step = 0; step < K && num != 0; ++step) {
    const bool upper = (num >> (K - 1)) & 1U;
    num = (num << 1U) & mask;
    const Scalar y = promote(DyadicRational::from_parts(0, num, K).to_scalar(), m);
    if (upper) {
      acc += coef * sys.g1(y);
      coef *= a1;
    } else {
      acc += coef * sys.g0(y);
      coef *= a0;
    }
  }
  acc += coef * sys.f0();
  return {acc, 0.0};
}

DeRhamValue derham_eval(const DeRhamSystem& sys, double x, unsigned depth) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("de Rham evaluation needs x in [0, 1]");
  require_valid(sys);
  const Mode m = common_mode(sys.mode(), Mode::FloatReal);
  const Scalar a0 = promote(sys.a0, m), a1 = promote(sys.a1, m);
  const Scalar f0 = promote(sys.f0(), m), f1 = promote(sys.f1(), m);
  if (x == 1.0) return {f1, 0.0};

  Scalar acc = Scalar::zero(m);
  Scalar coef = Scalar::one(m);
  double y = x;
  for (unsigned step = 0; step < depth; ++step) {
    if (y == 0.0) return {acc + coef * f0, 0.0};
    const bool upper = y >= 0.5;
    y = upper ? 2.0 * y - 1.0 : 2.0 * y;
    const Scalar ys = promote(Scalar(y), m);
    if (upper) {
      acc += coef * sys.g1(ys);
      coef *= a1;
    } else {
      acc += coef * sys.g0(ys);
      coef *= a0;
    }
  }
  if (y == 0.0) return {acc + coef * f0, 0.0};
  const Scalar seed = (f0 + f1) * Scalar::from_rational(Rational(1, 2), m);
  const double rho = sys.rho();
  const double radius = std::pow(rho, static_cast<double>(depth)) * 2.0 * g_sup(sys) / (1.0 - rho);
  return {acc + coef * seed, radius};
}

Scalar F_q(const DyadicRational& x, const QWeight& q) {
  const Mode m = q.mode();
  const Scalar xs = promote(x.to_scalar(), m);
  return q.q() * xs - takagi_dyadic_exact(x, q.a()) * lift(Rational(1, 2), m);
}

Scalar F_q(double x, const QWeight& q, double tol) {
  if (!q.contractive()) throw DomainError("F_q off dyadic points requires |q| > 1/2");
  const Scalar t = takagi_series(Scalar(x), q.a(), tol);
  const Mode m = t.mode();
  return promote(q.q(), m) * promote(Scalar(x), m) - t * lift(Rational(1, 2), m);
}

Scalar hat_F_q(double u, const QWeight& q, double tol) {
  if (!q.contractive()) throw DomainError("hat F_q requires |q| > 1/2");
  if (u < 0.0 || u > 1.0) u -= std::floor(u);
  const Scalar t = takagi_series(Scalar(std::exp2(u - 1.0)), q.a(), tol);
  return promote(Scalar(std::exp2(1.0 - u)), t.mode()) * t;
}

Scalar hat_F_q_log2(Natural n, const QWeight& q) {
  if (n == 0) throw DomainError("log2 of zero");
  const unsigned k = floor_log2(n);
  if (k + 1 > DyadicRational::kMaxExponent) throw DomainError("n too large");
  const DyadicRational x = DyadicRational::from_fraction(static_cast<std::int64_t>(n), k + 1);
  Rational factor(Integer(pow2(k + 1).get_num()), Integer(static_cast<unsigned long>(n)));
  factor.canonicalize();
  return lift(factor, q.mode()) * takagi_dyadic_exact(x, q.a());
}

Scalar tilde_F_q(double u, const QWeight& q, double tol) {
  if (!q.q().is_real()) throw ModeError("tilde F_q is defined for real q only");
  if (cmp(Rational(1, 2), q.q().is_exact() ? q.q().rational() : Rational(q.q().real())) >= 0) {
    throw DomainError("tilde F_q requires q > 1/2");
  }
  if (q.is_one()) throw DomainError("tilde F_q excludes q = 1; use tilde F_1");
  if (u < 0.0 || u > 1.0) u -= std::floor(u);
  const double qd = q.q().to_double();
  const double t = takagi_series(Scalar(std::exp2(u - 1.0)), Scalar(q.a().to_double()), tol).real();
  return Scalar((1.0 - std::pow(qd, 1.0 - u)) / (1.0 - qd) -
                std::pow(qd, -u) * std::exp2(1.0 - u) * t);
}

double tilde_F_1(double t, double tol) {
  if (t < 0.0 || t > 1.0) t -= std::floor(t);
  const double T = takagi_series(Scalar(std::exp2(t - 1.0)), Scalar(0.5), tol).real();
  return 1.0 - t - std::exp2(1.0 - t) * T;
}

double tilde_F_1_log2(Natural n) {
  if (n == 0) throw DomainError("log2 of zero");
  const unsigned k = floor_log2(n);
  const double u = std::log2(static_cast<double>(n)) - static_cast<double>(k);
  const DyadicRational x = DyadicRational::from_fraction(static_cast<std::int64_t>(n), k + 1);
  Rational factor(Integer(pow2(k + 1).get_num()), Integer(static_cast<unsigned long>(n)));
  factor.canonicalize();
  const Rational scaled = factor * takagi_dyadic_exact(x, Scalar::exact(1, 2)).rational();
  return 1.0 - u - scaled.get_d();
}

Scalar G_tilde_gamma(double x, const Scalar& gamma_limit, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Mode m = gamma_limit.is_real() ? Mode::FloatReal : Mode::FloatComplex;
  const Scalar g = promote(gamma_limit, m);
  if (g.is_zero()) return Scalar::zero(m);
  x -= std::floor(x);
  const double scale = modulus(g) / 2.0;
  // Tail beyond index M: sum_{i > M} (1/2) 2^{-(x+i)} = 2^{-(x+M)} / 2.
  int cutoff = -1;
  while (scale * std::exp2(-(x + cutoff)) / 2.0 > tol) ++cutoff;
  const double base = std::exp2(x);
  double sum = 0.0;
  for (int i = -1; i <= cutoff; ++i) {
    const double y = std::ldexp(base, i);
    sum += tau(y) / y;
  }
  return -(g * Scalar::from_rational(Rational(1, 2), m)) * promote(Scalar(sum), m);
}

}  // namespace tdq
