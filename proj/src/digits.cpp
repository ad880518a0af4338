#include "tdq/digits.hpp"

#include <bit>

namespace tdq {

Natural DigitVector::value() const {
  Natural n = 0;
  for (std::size_t i = bits.size(); i-- > 0;) n = (n << 1U) | bits[i];
  return n;
}

DigitVector binary_digits(Natural n) {
  DigitVector d;
  for (; n != 0; n >>= 1U) d.bits.push_back(static_cast<std::uint8_t>(n & 1U));
  return d;
}

unsigned floor_log2(Natural n) {
  if (n == 0) throw DomainError("log2 of zero");
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

WeightSequence WeightSequence::q_geometric(const QWeight& q) {
  WeightSequence w;
  w.q_ = q.q();
  w.mode_ = q.mode();
  if (compare_modulus(q.q(), Rational(1)) < 0) {
    w.limit_ = Scalar::zero(q.mode());
  } else if (q.is_one()) {
    w.limit_ = Scalar::one(q.mode());
  }
  return w;
}

WeightSequence WeightSequence::explicit_list(std::vector<Scalar> head, Scalar tail) {
  for (const auto& h : head) {
    if (h.mode() != tail.mode()) throw ModeError("weight list mixes numeric modes");
  }
  WeightSequence w;
  w.mode_ = tail.mode();
  w.head_ = std::move(head);
  w.limit_ = tail;
  w.tail_ = std::move(tail);
  return w;
}

Scalar WeightSequence::weight(std::size_t i) const {
  if (q_) return int_pow(*q_, i + 1);
  return i < head_.size() ? head_[i] : *tail_;
}

Scalar s_q(Natural n, const QWeight& q) {
  Scalar sum = Scalar::zero(q.mode());
  Scalar power = q.q();
  for (; n != 0; n >>= 1U) {
    if (n & 1U) sum += power;
    if (n > 1) power *= q.q();
  }
  return sum;
}

Scalar weighted_digit_sum(Natural n, const WeightSequence& gamma) {
  Scalar sum = Scalar::zero(gamma.mode());
  for (std::size_t i = 0; n != 0; n >>= 1U, ++i) {
    if (n & 1U) sum += gamma.weight(i);
  }
  return sum;
}

Scalar weighted_cumulative_sum(Natural n, const WeightSequence& gamma) {
  const unsigned width = n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n));
  std::vector<Scalar> weights;
  weights.reserve(width);
  for (unsigned i = 0; i < width; ++i) weights.push_back(gamma.weight(i));
  Scalar total = Scalar::zero(gamma.mode());
  for (Natural k = 1; k < n; ++k) {
    Natural m = k;
    for (std::size_t i = 0; m != 0; m >>= 1U, ++i) {
      if (m & 1U) total += weights[i];
    }
  }
  return total;
}

Scalar S_q_direct(Natural n, const QWeight& q) {
  if (n == 0) throw DomainError("S_q(n) requires n >= 1");
  Scalar total = Scalar::zero(q.mode());
  for (Natural k = 0; k < n; ++k) total += s_q(k, q);
  return total;
}

std::vector<Scalar> S_q_direct_table(Natural n_max, const QWeight& q) {
  std::vector<Scalar> table;
  table.reserve(n_max + 1);
  table.push_back(Scalar::zero(q.mode()));
  Scalar total = Scalar::zero(q.mode());
  for (Natural k = 0; k < n_max; ++k) {
    total += s_q(k, q);
    table.push_back(total);
  }
  return table;
}

Scalar S_q_pow2(unsigned k, const QWeight& q) {
  const Mode m = q.mode();
  if (k == 0) return Scalar::zero(m);
  Integer half_p;
  mpz_ui_pow_ui(half_p.get_mpz_t(), 2, k - 1);
  const Scalar half = Scalar::from_rational(Rational(half_p), m);
  if (q.is_one()) return Scalar::from_natural(k, m) * half;
  const Scalar one = Scalar::one(m);
  return q.q() * (one - int_pow(q.q(), k)) / (one - q.q()) * half;
}

namespace {

Scalar recurse(Natural n, const QWeight& q) {
  const Mode mode = q.mode();
  if (n <= 1) return Scalar::zero(mode);
  const Scalar& qq = q.q();
  const Scalar two = Scalar::from_rational(Rational(2), mode);
  if ((n & 1U) == 0) {
    const Natural m = n / 2;
    return two * qq * recurse(m, q) + Scalar::from_natural(m, mode) * qq;
  }
  const unsigned k = floor_log2(n);
  const Natural p = Natural{1} << k;
  const Natural half = p / 2;
  const Scalar one = Scalar::one(mode);
  if (n < p + half) {
    // n = m + p_m with p_m = p/2, k_m = k - 1.
    const Natural m = n - half;
    return recurse(m, q) + (two * qq - one) * recurse(half, q) -
           Scalar::from_natural(m - half, mode) * int_pow(qq, k) * (one - qq) +
           qq * Scalar::from_natural(half, mode);
  }
  // n = m + 2 p_m with p_m = p/2, k_m = k - 1.
  const Natural m = n - p;
  return recurse(m, q) + recurse(p, q) + Scalar::from_natural(m, mode) * int_pow(qq, k + 1);
}

}  // namespace

Scalar S_q_recursive(Natural n, const QWeight& q) {
  if (n == 0) throw DomainError("S_q(n) requires n >= 1");
  return recurse(n, q);
}

}  // namespace tdq
