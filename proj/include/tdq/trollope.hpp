#pragma once

#include "tdq/digits.hpp"
#include "tdq/dyadic.hpp"
#include "tdq/scalar.hpp"
#include "tdq/takagi.hpp"

namespace tdq {

/// n = 2^{k+u} = p (1 + x) with k = floor(log2 n), u = {log2 n}, x = (n - p)/p.
struct LogDecomposition {
  Natural n = 1;
  unsigned k = 0;
  double u = 0.0;
  Natural p = 1;
  DyadicRational x;

  static LogDecomposition of(Natural n);
  /// r = q^k.
  Scalar r(const QWeight& q) const { return int_pow(q.q(), k); }
};

/**
 * Right-hand side of the q-weighted Trollope-Delange formula,
 *   (q/2) [ (1 - q^{k+1})/(1 - q) - q^k hat F_q({log2 n}) ],
 * with hat F_q taken through the exact dyadic route. Requires |q| > 1/2 and
 * q != 1; equals S_q(n)/n.
 */
Scalar theorem1_rhs(Natural n, const QWeight& q);

/// (q/2)(1 - q^{k+1})/(1 - q) - (1/(2n)) sum_{i=1}^{k+1} (2q)^i tau(n/2^i); any q != 1.
Scalar dyadic_formula(Natural n, const QWeight& q);

/// (1/2) log2 n + (1/2) tilde F_1({log2 n}), approximating S(n)/n for unit weights.
double classic_formula(Natural n);

/// D*_n = (1/n)(1 + sum_{j=1}^{k} tau(n/2^j)) of the van der Corput sequence.
Scalar vdc_star_discrepancy(Natural n);

/**
 * S(n, gamma) - (n/2) sum_{i=0}^{floor(log2 n)} gamma_i - n G~(log2 n).
 * Float result; needs gamma.limit() and n >= 2. Zero up to n * tol for
 * constant weights.
 */
Scalar larcher_residual(Natural n, const WeightSequence& gamma, double tol = kDefaultTol);

}  // namespace tdq
