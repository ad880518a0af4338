#include "tdq/odometer.hpp"

#include <algorithm>

namespace tdq {

namespace {

Scalar lift(const Rational& r, Mode m) { return Scalar::from_rational(r, m); }

bool is_dyadic(const Rational& r) { return mpz_popcount(r.get_den_mpz_t()) == 1; }

// T_a(t): exact digit route at dyadic t, series otherwise.
Scalar takagi_at(const Scalar& t, const Scalar& a, double tol) {
  if (t.is_exact() && is_dyadic(t.rational())) {
    return takagi_dyadic_exact(DyadicRational::from_rational(t.rational()), a);
  }
  return takagi_series(t, a, tol);
}

// Largest modulus as a scalar usable as a divisor in mode m; 1 if all vanish.
Scalar max_modulus(const std::vector<Scalar>& xs, Mode m) {
  if (m == Mode::ExactRational) {
    Rational best(0);
    for (const auto& x : xs) {
      Rational v = abs(x.rational());
      if (v > best) best = v;
    }
    return sgn(best) == 0 ? Scalar::one(m) : Scalar(best);
  }
  double best = 0.0;
  for (const auto& x : xs) best = std::max(best, modulus(x));
  if (best == 0.0) return Scalar::one(m);
  return promote(Scalar(best), m);
}

// Runs the orbit of omega for n steps, calling visit(j, s_q(T^j omega)).
template <typename Visit>
void walk_orbit(OdometerPoint omega, const QWeight& q, Natural n, Visit&& visit) {
  std::vector<Scalar> powers;  // q^{i+1}
  std::vector<Scalar> deltas;  // q^{c+1} - sum_{i<c} q^{i+1}
  auto power = [&](std::size_t i) -> const Scalar& {
    while (powers.size() <= i) {
      powers.push_back(powers.empty() ? q.q() : powers.back() * q.q());
    }
    return powers[i];
  };
  auto delta = [&](std::size_t c) -> const Scalar& {
    while (deltas.size() <= c) {
      const std::size_t k = deltas.size();
      Scalar d = power(k);
      for (std::size_t i = 0; i < k; ++i) d -= power(i);
      deltas.push_back(std::move(d));
    }
    return deltas[c];
  };

  Scalar current = s_q_point(omega, q);
  for (Natural j = 0; j < n; ++j) {
    visit(j, current);
    if (j + 1 == n) break;
    current += delta(omega.step());
  }
}

}  // namespace

Scalar G_q(Natural n, const QWeight& q) {
  if (n == 0) throw DomainError("G_q needs n >= 1");
  const Mode m = q.mode();
  const unsigned k = floor_log2(n);
  const Natural p = Natural{1} << k;
  const Scalar pp = Scalar::from_natural(p, m);
  const Scalar ratio = Scalar::from_natural(n, m) / pp;
  return (S_q_recursive(n, q) - ratio * S_q_pow2(k, q)) / (pp * int_pow(q.q(), k));
}

Lemma1Point lemma1_F_of(Natural n, const QWeight& q) {
  if (n == 0) throw DomainError("lemma 1 map needs n >= 1");
  const unsigned k = floor_log2(n);
  const Natural p = Natural{1} << k;
  return {DyadicRational::from_fraction(static_cast<std::int64_t>(n - p), k), G_q(n, q)};
}

std::vector<Scalar> dyadic_grid(unsigned m) {
  std::vector<Scalar> grid;
  const Natural count = Natural{1} << m;
  grid.reserve(count + 1);
  for (Natural j = 0; j <= count; ++j) {
    grid.push_back(DyadicRational::from_fraction(static_cast<std::int64_t>(j), m).to_scalar());
  }
  return grid;
}

FluctuationCurve phi_curve(std::span<const Scalar> partial_sums, Natural l,
                           std::span<const Scalar> grid, const Normalizer& norm) {
  if (grid.empty()) throw DomainError("fluctuation curve needs a non-empty grid");
  if (l == 0) throw DomainError("window length must be positive");
  if (partial_sums.size() < l + 1) throw DomainError("partial sums must cover 0..l");

  Mode m = partial_sums[0].mode();
  for (const auto& t : grid) {
    if (!t.is_real()) throw ModeError("grid abscissae must be real");
    m = common_mode(m, t.mode());
  }
  if (norm.kind == Normalization::Explicit) {
    if (!norm.R) throw DomainError("explicit normalisation needs R");
    m = common_mode(m, norm.R->mode());
  }
  auto S = [&](Natural j) { return promote(partial_sums[j], m); };
  const Scalar S_l = S(l);
  const Scalar ll = Scalar::from_natural(l, m);

  auto raw_at = [&](const Scalar& t) {
    Natural j = 0;
    Scalar frac = Scalar::zero(m);
    if (t.is_exact()) {
      const Rational& r = t.rational();
      if (sgn(r) < 0 || r > 1) throw DomainError("grid point outside [0, 1]");
      const Rational tl = r * Rational(Integer(static_cast<unsigned long>(l)));
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), tl.get_num_mpz_t(), tl.get_den_mpz_t());
      j = fl.get_ui();
      frac = lift(tl - Rational(fl), m);
    } else {
      const double r = t.real();
      if (!(r >= 0.0 && r <= 1.0)) throw DomainError("grid point outside [0, 1]");
      const double tl = r * static_cast<double>(l);
      j = std::min<Natural>(static_cast<Natural>(tl), l);
      frac = promote(Scalar(tl - static_cast<double>(j)), m);
    }
    Scalar interp = S(j);
    if (j < l && !frac.is_zero()) interp += frac * (S(j + 1) - S(j));
    return interp - promote(t, m) * S_l;
  };

  FluctuationCurve curve;
  curve.l = l;
  curve.normalization = norm.kind;
  if (norm.kind == Normalization::Explicit) {
    curve.R = promote(*norm.R, m);
    if (curve.R.is_zero()) throw DomainError("normaliser must be non-zero");
  } else {
    std::vector<Scalar> breakpoints;
    breakpoints.reserve(l + 1);
    for (Natural j = 0; j <= l; ++j) {
      breakpoints.push_back(S(j) - Scalar::from_natural(j, m) / ll * S_l);
    }
    curve.R = max_modulus(breakpoints, m);
  }
  curve.grid.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  for (const auto& t : grid) curve.values.push_back(raw_at(t) / curve.R);
  return curve;
}

Prop2Result prop2_exact(const QWeight& q, unsigned N) {
  if (!q.contractive()) throw DomainError("the limiting-curve identity requires |q| > 1/2");
  if (N == 0 || N > 24) throw DomainError("N must be in 1..24");
  const Mode m = q.mode();
  const Natural l = Natural{1} << N;
  const std::vector<Scalar> sums = S_q_direct_table(l, q);
  const Scalar R = int_pow(lift(Rational(2), m) * q.q(), N - 1);
  const std::vector<Scalar> grid = dyadic_grid(N - 1);
  Prop2Result out{phi_curve(sums, l, grid, Normalizer::fixed(R)), Scalar()};
  out.max_residual = sup_distance_to_limit(out.curve, q);
  return out;
}

OdometerPoint::OdometerPoint(std::vector<std::uint8_t> bits, OverflowPolicy policy)
    : bits_(std::move(bits)), policy_(policy) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("odometer bits must be 0 or 1");
  }
}

OdometerPoint OdometerPoint::from_natural(Natural n, OverflowPolicy policy) {
  return OdometerPoint(binary_digits(n).bits, policy);
}

OdometerPoint OdometerPoint::parse(std::string_view bits, OverflowPolicy policy) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("odometer point must be a 0/1 string (LSB first)");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return OdometerPoint(std::move(out), policy);
}

OdometerPoint OdometerPoint::random(std::mt19937_64& rng, std::size_t width,
                                    OverflowPolicy policy) {
  std::vector<std::uint8_t> out(width);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < width; ++i) {
    if (i % 64 == 0) word = rng();
    out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return OdometerPoint(std::move(out), policy);
}

bool OdometerPoint::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
}

std::string OdometerPoint::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::size_t OdometerPoint::step() {
  std::size_t j = 0;
  while (j < bits_.size() && bits_[j] == 1) ++j;
  if (j == bits_.size()) {
    if (policy_ == OverflowPolicy::Error) {
      throw DomainError("odometer carry exceeds capacity of " + std::to_string(bits_.size()) +
                        " bits");
    }
    bits_.push_back(0);
  }
  std::fill(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(j), 0);
  bits_[j] = 1;
  return j;
}

OdometerPoint odometer_step(OdometerPoint omega) {
  omega.step();
  return omega;
}

Scalar s_q_point(const OdometerPoint& omega, const QWeight& q) {
  Scalar sum = Scalar::zero(q.mode());
  Scalar power = q.q();
  for (auto b : omega.bits()) {
    if (b) sum += power;
    power *= q.q();
  }
  return sum;
}

std::vector<Scalar> ergodic_partial_sums(const OdometerPoint& omega, const QWeight& q,
                                         Natural n) {
  std::vector<Scalar> sums;
  sums.reserve(n + 1);
  sums.push_back(Scalar::zero(q.mode()));
  walk_orbit(omega, q, n, [&](Natural, const Scalar& s) { sums.push_back(sums.back() + s); });
  return sums;
}

Scalar ergodic_sum(const OdometerPoint& omega, const QWeight& q, Natural n) {
  if (n == 0) throw DomainError("ergodic sum needs n >= 1");
  Scalar total = Scalar::zero(q.mode());
  walk_orbit(omega, q, n, [&](Natural, const Scalar& s) { total += s; });
  return total;
}

Scalar expected_s_q(const QWeight& q) {
  const Mode m = q.mode();
  if (q.is_one()) throw DomainError("E s_q diverges at q = 1");
  return q.q() / (lift(Rational(2), m) * (Scalar::one(m) - q.q()));
}

Scalar birkhoff_deviation(const OdometerPoint& omega, const QWeight& q, Natural n) {
  if (compare_modulus(q.q(), Rational(1)) >= 0) throw DomainError("Birkhoff average needs |q| < 1");
  if (q.q().is_real() && !q.contractive()) {
    throw DomainError("Birkhoff average for real q needs 1/2 < |q| < 1");
  }
  const Scalar avg = ergodic_sum(omega, q, n) / Scalar::from_natural(n, q.mode());
  return avg - expected_s_q(q);
}

Scalar sup_distance_to_limit(const FluctuationCurve& curve, const QWeight& q, double tol) {
  std::vector<Scalar> diffs;
  diffs.reserve(curve.values.size());
  bool exact = q.mode() == Mode::ExactRational;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const Scalar T = takagi_at(curve.grid[i], q.a(), tol);
    const Mode m = common_mode(common_mode(curve.values[i].mode(), T.mode()), q.mode());
    exact = exact && m == Mode::ExactRational;
    diffs.push_back(promote(curve.values[i], m) + promote(q.q(), m) * promote(T, m));
  }
  if (exact) {
    Rational best(0);
    for (const auto& d : diffs) {
      Rational v = abs(d.rational());
      if (v > best) best = v;
    }
    return Scalar(best);
  }
  double best = 0.0;
  for (const auto& d : diffs) best = std::max(best, modulus(d));
  return Scalar(best);
}

StabilizerReport stabilizer_search(const OdometerPoint& omega, const QWeight& q,
                                   std::span<const Natural> candidates,
                                   std::span<const Scalar> grid) {
  if (candidates.empty()) throw DomainError("stabilizer search needs candidate windows");
  if (grid.empty()) throw DomainError("stabilizer search needs a non-empty grid");
  StabilizerReport report;
  const Natural longest = *std::max_element(candidates.begin(), candidates.end());
  const std::vector<Scalar> sums = ergodic_partial_sums(omega, q, longest);

  for (Natural l : candidates) {
    if (l == 0) throw DomainError("window length must be positive");
    const FluctuationCurve curve = phi_curve(sums, l, grid, Normalizer::max_abs());

    std::vector<Scalar> limit_at_breaks;
    limit_at_breaks.reserve(l + 1);
    Mode m = curve.values.front().mode();
    for (Natural j = 0; j <= l; ++j) {
      Rational t(Integer(static_cast<unsigned long>(j)), Integer(static_cast<unsigned long>(l)));
      t.canonicalize();
      const Scalar T = takagi_at(Scalar(t), q.a(), kDefaultTol);
      m = common_mode(m, T.mode());
      limit_at_breaks.push_back(T);
    }
    const Scalar qm = promote(q.q(), m);
    for (auto& T : limit_at_breaks) T = qm * promote(T, m);
    const Scalar scale = max_modulus(limit_at_breaks, m);

    double dist = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Scalar T = promote(takagi_at(grid[i], q.a(), kDefaultTol), m);
      const Scalar target = -(qm * T) / scale;
      dist = std::max(dist, modulus(promote(curve.values[i], m) - target));
    }
    report.profile.push_back({l, dist});
    if (report.profile.size() == 1 || dist < report.best_distance) {
      report.best_l = l;
      report.best_distance = dist;
    }
  }
  return report;
}

}  // namespace tdq
