#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tdq/digits.hpp"
#include "tdq/dyadic.hpp"
#include "tdq/scalar.hpp"
#include "tdq/takagi.hpp"

namespace tdq {

/// G_q(n) = (S_q(n) - (n/p_n) S_q(p_n)) / (p_n r_n), r_n = q^{k_n}.
Scalar G_q(Natural n, const QWeight& q);

struct Lemma1Point {
  DyadicRational x;
  Scalar value;
};

/// x_n = (n - p_n)/p_n together with F_q(x_n) := G_q(n).
Lemma1Point lemma1_F_of(Natural n, const QWeight& q);

enum class Normalization { MaxAbs, Explicit };

/// MaxAbs takes the largest |S(j) - (j/l) S(l)| over the breakpoints
/// j = 0..l (1 if that maximum is zero); Explicit uses the given R.
struct Normalizer {
  Normalization kind = Normalization::MaxAbs;
  std::optional<Scalar> R;

  static Normalizer max_abs() { return {}; }
  static Normalizer fixed(Scalar r) { return {Normalization::Explicit, std::move(r)}; }
};

struct FluctuationCurve {
  std::vector<Scalar> grid;
  std::vector<Scalar> values;
  Natural l = 0;
  Scalar R;
  Normalization normalization = Normalization::MaxAbs;
};

/// Dyadic grid {j / 2^m : j = 0..2^m} as exact scalars.
std::vector<Scalar> dyadic_grid(unsigned m);

/**
 * phi(t) = (S(t l) - t S(l)) / R on the grid, S extended to real arguments
 * by linear interpolation. `partial_sums[j]` is S(j) and must cover 0..l.
 */
FluctuationCurve phi_curve(std::span<const Scalar> partial_sums, Natural l,
                           std::span<const Scalar> grid, const Normalizer& norm);

struct Prop2Result {
  FluctuationCurve curve;
  /// max |phi(t_j) + q T_a(t_j)|, exact in ExactRational mode.
  Scalar max_residual;
};

/// l = 2^N, R = (2q)^{N-1}, grid t_j = j/2^{N-1}. Requires |q| > 1/2.
Prop2Result prop2_exact(const QWeight& q, unsigned N);

enum class OverflowPolicy { Grow, Error };

/// A point of the dyadic integers stored as finitely many bits (LSB first)
/// with an implicit zero tail.
class OdometerPoint {
 public:
  OdometerPoint() = default;
  explicit OdometerPoint(std::vector<std::uint8_t> bits,
                         OverflowPolicy policy = OverflowPolicy::Grow);

  static OdometerPoint from_natural(Natural n, OverflowPolicy policy = OverflowPolicy::Grow);
  /// "110" -> bits {1,1,0} (value 3). Only '0'/'1' accepted.
  static OdometerPoint parse(std::string_view bits, OverflowPolicy policy = OverflowPolicy::Grow);
  static OdometerPoint random(std::mt19937_64& rng, std::size_t width = 64,
                              OverflowPolicy policy = OverflowPolicy::Grow);

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  OverflowPolicy policy() const { return policy_; }
  bool is_zero() const;
  std::string to_string() const;

  /// omega + 1 with carry. Under Error policy a carry out of the stored
  /// bits throws DomainError and leaves the point unchanged.
  /// Returns the number of trailing ones that were cleared.
  std::size_t step();

  friend bool operator==(const OdometerPoint&, const OdometerPoint&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  OverflowPolicy policy_ = OverflowPolicy::Grow;
};

OdometerPoint odometer_step(OdometerPoint omega);

/// sum_i omega_i q^{i+1} over the stored bits.
Scalar s_q_point(const OdometerPoint& omega, const QWeight& q);

/// S_{q,omega}(j) for j = 0..n (entry 0 is 0).
std::vector<Scalar> ergodic_partial_sums(const OdometerPoint& omega, const QWeight& q, Natural n);

/// S_{q,omega}(n) = sum_{j=0}^{n-1} s_q(T^j omega).
Scalar ergodic_sum(const OdometerPoint& omega, const QWeight& q, Natural n);

/// E s_q = q / (2 (1 - q)).
Scalar expected_s_q(const QWeight& q);

/// (1/n) S_{q,omega}(n) - q/(2(1 - q)). Needs |q| < 1 (and |q| > 1/2 for real q).
Scalar birkhoff_deviation(const OdometerPoint& omega, const QWeight& q, Natural n);

/// max over the grid of |phi(t) + q T_a(t)|; exact at exact dyadic grid points.
Scalar sup_distance_to_limit(const FluctuationCurve& curve, const QWeight& q,
                             double tol = kDefaultTol);

struct StabilizerEntry {
  Natural l = 0;
  double distance = 0.0;
};

struct StabilizerReport {
  std::vector<StabilizerEntry> profile;
  Natural best_l = 0;
  double best_distance = 0.0;
};

/**
 * For each window l: the MaxAbs-normalised fluctuation curve of the orbit of
 * omega against the target -q T_a / max_j |q T_a(j/l)|, distance measured as
 * the max modulus over `grid`. Ties keep the first candidate.
 */
StabilizerReport stabilizer_search(const OdometerPoint& omega, const QWeight& q,
                                   std::span<const Natural> candidates,
                                   std::span<const Scalar> grid);

}  // namespace tdq
