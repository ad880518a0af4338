#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdq/dyadic.hpp"
#include "tdq/scalar.hpp"

namespace tdq {

/// Binary digits of n, least significant first, no trailing zeros.
struct DigitVector {
  std::vector<std::uint8_t> bits;

  Natural value() const;
  std::size_t size() const { return bits.size(); }
  friend bool operator==(const DigitVector&, const DigitVector&) = default;
};

DigitVector binary_digits(Natural n);

/// Largest k with 2^k <= n. n >= 1.
unsigned floor_log2(Natural n);

/**
 * Digit weights (gamma_0, gamma_1, ...). Either the q-geometric family
 * gamma_i = q^{i+1}, or an explicit head followed by a constant tail.
 */
class WeightSequence {
 public:
  static WeightSequence q_geometric(const QWeight& q);
  /// head[i] for i < head.size(), `tail` afterwards; the tail is the declared limit.
  static WeightSequence explicit_list(std::vector<Scalar> head, Scalar tail);
  static WeightSequence constant(Scalar c) { return explicit_list({}, std::move(c)); }

  Scalar weight(std::size_t i) const;
  /// lim gamma_i when it exists.
  const std::optional<Scalar>& limit() const { return limit_; }
  Mode mode() const { return mode_; }

 private:
  WeightSequence() = default;

  std::optional<Scalar> q_;
  std::vector<Scalar> head_;
  std::optional<Scalar> tail_;
  std::optional<Scalar> limit_;
  Mode mode_ = Mode::ExactRational;
};

/// sum_i omega_i q^{i+1}.
Scalar s_q(Natural n, const QWeight& q);

/// sum_i omega_i gamma_i.
Scalar weighted_digit_sum(Natural n, const WeightSequence& gamma);

/// sum_{k=0}^{n-1} s(k, gamma).
Scalar weighted_cumulative_sum(Natural n, const WeightSequence& gamma);

/// S_q(n) = sum_{k=0}^{n-1} s_q(k) by literal summation. n >= 1.
Scalar S_q_direct(Natural n, const QWeight& q);

/// Prefix table t[j] = S_q(j) for j = 0..n_max (t[0] = 0), built by the
/// same literal summation as S_q_direct.
std::vector<Scalar> S_q_direct_table(Natural n_max, const QWeight& q);

/// Closed form S_q(2^k) = q (1 - q^k)/(1 - q) 2^{k-1}; k 2^{k-1} when q = 1.
Scalar S_q_pow2(unsigned k, const QWeight& q);

/**
 * S_q(n) through the doubling and block-shift recursions:
 *   S(2m)        = 2q S(m) + m q
 *   S(m + p_m)   = S(m) + (2q - 1) S(p_m) - (m - p_m) q^{k_m+1} (1 - q) + q p_m
 *   S(m + 2 p_m) = S(m) + S(2 p_m) + m q^{k_m+2}
 * Odd n in [P, 3P/2) uses the second line and odd n in [3P/2, 2P) the third,
 * with P = 2^{floor(log2 n)}; both reduce n to m in [P/2, P).
 */
Scalar S_q_recursive(Natural n, const QWeight& q);

}  // namespace tdq
