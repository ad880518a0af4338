#pragma once

#include <optional>
#include <string>

#include "tdq/digits.hpp"
#include "tdq/scalar.hpp"

namespace tdq {

/// Outcome of an identity sweep. Exact sweeps pass only on a zero residual;
/// float sweeps pass when max_residual <= tol. The witness is the smallest
/// failing index.
struct SweepReport {
  std::string name;
  Natural checked = 0;
  Scalar max_residual;
  std::optional<Natural> witness;
  bool exact = true;
  double tol = 0.0;
  bool pass = true;

  std::string summary() const;
};

/// theorem1_rhs(n) against S_q_direct(n)/n for n = 1..n_max.
SweepReport verify_theorem1(const QWeight& q, Natural n_max, double tol);

/// dyadic_formula(n) against S_q_direct(n)/n for n = 1..n_max.
SweepReport verify_dyadic(const QWeight& q, Natural n_max, double tol);

/// prop2_exact residual for N = n_min..n_max; the witness is N.
SweepReport verify_prop2(const QWeight& q, unsigned n_min, unsigned n_max, double tol);

/// S_q_recursive = S_q_direct (= S_q_pow2 at powers of two), the block-shift
/// identity S(n + 2 p_n) = S(n) + S(2 p_n) + n q^{k_n+2}, and the four
/// digit-shift identities, for n = 1..n_max.
SweepReport verify_recursions(const QWeight& q, Natural n_max, double tol);

/// Corollary form (q/2)((1 - q^{log2 n})/(1 - q) + q^{log2 n} tilde F_q({log2 n}))
/// against theorem1_rhs in floats; relative residual.
SweepReport verify_corollary(const QWeight& q, Natural n_max, double tol);

/// max_n |larcher_residual(n)| / n for n = 2..n_max with constant weights c.
SweepReport verify_larcher(const Scalar& c, Natural n_max, double tol);

/// (1 - D*_n)/2 = S_{1/2}(n)/n exactly for n = 1..n_max.
SweepReport verify_vdc(Natural n_max);

/// |classic_formula(n) - S(n)/n| for n = 1..n_max.
SweepReport verify_classic(Natural n_max, double tol);

}  // namespace tdq
