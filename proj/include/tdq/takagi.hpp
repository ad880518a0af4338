#pragma once

#include <functional>
#include <optional>

#include "tdq/digits.hpp"
#include "tdq/dyadic.hpp"
#include "tdq/scalar.hpp"

namespace tdq {

inline constexpr double kDefaultTol = 1e-14;

/// Smallest N with |a|^{N+1} / (2 (1 - |a|)) <= tol. Requires |a| < 1.
std::size_t takagi_series_terms(double abs_a, double tol);

/**
 * Partial sum sum_{n=0}^{N} a^n tau(2^n x) of the Takagi-Landsberg series,
 * N from takagi_series_terms. Always returns a float: FloatComplex for
 * complex a, FloatReal otherwise. Exact x is doubled exactly before tau.
 */
Scalar takagi_series(const Scalar& x, const Scalar& a, double tol);

/// Finite sum over the `exponent` nonzero terms; any a, result in a's mode.
Scalar takagi_dyadic_exact(const DyadicRational& x, const Scalar& a);

/// T_a(n / 2^{k_n+1}) = a^{k_n+1} sum_{i=1}^{k_n+1} a^{-i} tau(n / 2^i). a != 0.
Scalar takagi_alt_dyadic(Natural n, const Scalar& a);

/**
 * f(x/2)     = a0 f(x) + g0(x)
 * f((x+1)/2) = a1 f(x) + g1(x)
 *
 * g0/g1 receive their argument already promoted to the working mode and must
 * return a Scalar of that mode. `g_bound` is sup |g_i| on [0,1]; when absent
 * it is taken from the endpoint values, which is exact for affine g.
 */
struct DeRhamSystem {
  using Map = std::function<Scalar(const Scalar&)>;

  Scalar a0;
  Scalar a1;
  Map g0;
  Map g1;
  std::optional<double> g_bound;

  /// a0 = a1 = a, g0(x) = x/2, g1(x) = (1 - x)/2.
  static DeRhamSystem takagi(const Scalar& a);
  /// a0 = a1 = 1/(2q), g0(x) = (2q - 3) x / 4, g1(x) = (2q - 1)(x + 1)/4.
  static DeRhamSystem f_q(const QWeight& q);

  Mode mode() const { return common_mode(a0.mode(), a1.mode()); }
  double rho() const;
  bool contractive() const { return rho() < 1.0; }
  /// f(0) = g0(0)/(1 - a0).
  Scalar f0() const;
  /// f(1) = g1(1)/(1 - a1).
  Scalar f1() const;
  /// a0 g1(1)/(1 - a1) + g0(1) - a1 g0(0)/(1 - a0) - g1(0).
  Scalar consistency_residual() const;
};

struct DeRhamValue {
  Scalar value;
  /// Certified bound on |value - f(x)|; zero for exact dyadic descent.
  double radius = 0.0;
};

/// Exact digit descent when x.exponent() <= depth; truncated descent otherwise.
/// x must lie in [0, 1].
DeRhamValue derham_eval(const DeRhamSystem& sys, const DyadicRational& x, unsigned depth);

/// Truncated descent to `depth` digits, seeded with (f(0) + f(1))/2; the
/// radius is rho^depth * 2 G / (1 - rho) with G the g bound.
DeRhamValue derham_eval(const DeRhamSystem& sys, double x, unsigned depth);

/// q x - T_a(x)/2, exact at dyadic x for any q.
Scalar F_q(const DyadicRational& x, const QWeight& q);
/// Float evaluation through the series; |q| > 1/2.
Scalar F_q(double x, const QWeight& q, double tol = kDefaultTol);

/// 2^{1-u} T_a(2^{u-1}) for u in [0, 1]; u outside is reduced mod 1. |q| > 1/2.
Scalar hat_F_q(double u, const QWeight& q, double tol = kDefaultTol);

/// hat F_q at u = {log2 n}, exactly: (2p/n) T_a(n/(2p)) with p = 2^{floor(log2 n)}.
Scalar hat_F_q_log2(Natural n, const QWeight& q);

/// (1 - q^{1-u})/(1 - q) - q^{-u} 2^{1-u} T_a(2^{u-1}). Real q > 1/2, q != 1.
Scalar tilde_F_q(double u, const QWeight& q, double tol = kDefaultTol);

/// 1 - t - 2^{1-t} T(2^{t-1}) with the classic Takagi function T = T_{1/2}.
double tilde_F_1(double t, double tol = kDefaultTol);

/// tilde F_1 at t = {log2 n} with the Takagi factor evaluated exactly.
double tilde_F_1_log2(Natural n);

/**
 * -(g/2) sum_{i >= -1} tau(2^{x+i}) / 2^{x+i} for the 1-periodic function
 * with x reduced to [0, 1). The cutoff makes (|g|/2) * tail <= tol.
 */
Scalar G_tilde_gamma(double x, const Scalar& gamma_limit, double tol = kDefaultTol);

}  // namespace tdq
