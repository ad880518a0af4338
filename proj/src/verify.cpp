#include "tdq/verify.hpp"

#include <bit>
#include <cmath>

#include "tdq/odometer.hpp"
#include "tdq/takagi.hpp"
#include "tdq/trollope.hpp"

namespace tdq {

namespace {

std::string render_fraction(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

class Tracker {
 public:
  Tracker(std::string name, bool exact, double tol) {
    report_.name = std::move(name);
    report_.exact = exact;
    report_.tol = tol;
    report_.max_residual = exact ? Scalar(Rational(0)) : Scalar(0.0);
  }

  void compare(Natural index, const Scalar& lhs, const Scalar& rhs) {
    const Mode m = common_mode(lhs.mode(), rhs.mode());
    residual(index, abs_value(promote(lhs, m) - promote(rhs, m)));
  }

  void relative(Natural index, double lhs, double rhs) {
    residual(index, Scalar(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs))));
  }

  void residual(Natural index, const Scalar& r) {
    ++report_.checked;
    bool failed = false;
    if (report_.exact && r.is_exact()) {
      if (r.rational() > report_.max_residual.rational()) report_.max_residual = r;
      failed = !r.is_zero();
    } else {
      if (report_.exact) {
        // A float residual turned up in an exact sweep; keep reporting in floats.
        report_.exact = false;
        report_.max_residual = Scalar(report_.max_residual.to_double());
      }
      const double v = r.to_double();
      if (!(v <= report_.max_residual.real())) report_.max_residual = Scalar(v);
      failed = !(v <= report_.tol);
    }
    if (failed && !report_.witness) report_.witness = index;
  }

  SweepReport finish() {
    report_.pass = !report_.witness;
    return std::move(report_);
  }

 private:
  SweepReport report_;
};

bool exact_sweep(const QWeight& q) { return q.mode() == Mode::ExactRational; }

}  // namespace

std::string SweepReport::summary() const {
  std::string out = name + ": checked " + std::to_string(checked) + ", max residual ";
  out += max_residual.is_exact() ? render_fraction(max_residual.rational()) : render(max_residual);
  if (!exact) out += " (tol " + render_double(tol) + ")";
  if (pass) {
    out += ", PASS";
  } else {
    out += ", FAIL at " + std::to_string(*witness);
  }
  return out;
}

SweepReport verify_theorem1(const QWeight& q, Natural n_max, double tol) {
  Tracker t("theorem1 q=" + render(q.q()), exact_sweep(q), tol);
  if (q.is_one()) throw DomainError("theorem1 excludes q = 1");
  if (!q.contractive()) throw DomainError("theorem1 requires |q| > 1/2");
  const auto table = S_q_direct_table(n_max, q);
  for (Natural n = 1; n <= n_max; ++n) {
    t.compare(n, theorem1_rhs(n, q), table[n] / Scalar::from_natural(n, q.mode()));
  }
  return t.finish();
}

SweepReport verify_dyadic(const QWeight& q, Natural n_max, double tol) {
  Tracker t("dyadic q=" + render(q.q()), exact_sweep(q), tol);
  if (q.is_one()) throw DomainError("dyadic formula excludes q = 1");
  const auto table = S_q_direct_table(n_max, q);
  for (Natural n = 1; n <= n_max; ++n) {
    t.compare(n, dyadic_formula(n, q), table[n] / Scalar::from_natural(n, q.mode()));
  }
  return t.finish();
}

SweepReport verify_prop2(const QWeight& q, unsigned n_min, unsigned n_max, double tol) {
  Tracker t("prop2 q=" + render(q.q()), exact_sweep(q), tol);
  for (unsigned N = n_min; N <= n_max; ++N) t.residual(N, prop2_exact(q, N).max_residual);
  return t.finish();
}

SweepReport verify_recursions(const QWeight& q, Natural n_max, double tol) {
  Tracker t("recursions q=" + render(q.q()), exact_sweep(q), tol);
  const Mode m = q.mode();
  const Scalar& qq = q.q();
  const Scalar one = Scalar::one(m);
  const auto table = S_q_direct_table(3 * n_max, q);
  for (Natural n = 1; n <= n_max; ++n) {
    const unsigned k = floor_log2(n);
    const Natural p = Natural{1} << k;
    t.compare(n, S_q_recursive(n, q), table[n]);
    if (n == p) t.compare(n, S_q_pow2(k, q), table[n]);
    t.compare(n, table[n + 2 * p],
              table[n] + table[2 * p] + Scalar::from_natural(n, m) * int_pow(qq, k + 2));

    const Scalar sj = s_q(n, q);
    t.compare(n, s_q(2 * n, q), qq * sj);
    t.compare(n, s_q(2 * n + 1, q), qq * sj + qq);
    t.compare(n, s_q(n + 2 * p, q), sj + int_pow(qq, k + 2));
    t.compare(n, s_q(n + p, q), sj - int_pow(qq, k + 1) * (one - qq));
  }
  return t.finish();
}

SweepReport verify_corollary(const QWeight& q, Natural n_max, double tol) {
  if (!q.q().is_real()) throw ModeError("the corollary form needs real q");
  Tracker t("corollary q=" + render(q.q()), false, tol);
  const double qd = q.q().to_double();
  for (Natural n = 1; n <= n_max; ++n) {
    const double log2n = std::log2(static_cast<double>(n));
    const double u = log2n - std::floor(log2n);
    const double ql = std::pow(qd, log2n);
    const double form = qd / 2.0 * ((1.0 - ql) / (1.0 - qd) + ql * tilde_F_q(u, q).real());
    t.relative(n, form, theorem1_rhs(n, q).to_double());
  }
  return t.finish();
}

SweepReport verify_larcher(const Scalar& c, Natural n_max, double tol) {
  Tracker t("larcher gamma=" + render(c), false, tol);
  const WeightSequence gamma = WeightSequence::constant(c);
  for (Natural n = 2; n <= n_max; ++n) {
    t.residual(n, Scalar(modulus(larcher_residual(n, gamma, tol)) / static_cast<double>(n)));
  }
  return t.finish();
}

SweepReport verify_vdc(Natural n_max) {
  Tracker t("vdc", true, 0.0);
  const QWeight half(Scalar::exact(1, 2));
  const auto table = S_q_direct_table(n_max, half);
  for (Natural n = 1; n <= n_max; ++n) {
    const Scalar lhs = (Scalar::exact(1) - vdc_star_discrepancy(n)) * Scalar::exact(1, 2);
    t.compare(n, lhs, table[n] / Scalar::from_natural(n, Mode::ExactRational));
  }
  return t.finish();
}

SweepReport verify_classic(Natural n_max, double tol) {
  Tracker t("classic", false, tol);
  std::uint64_t S = 0;
  for (Natural n = 1; n <= n_max; ++n) {
    const double lhs = classic_formula(n);
    t.residual(n, Scalar(std::abs(lhs - static_cast<double>(S) / static_cast<double>(n))));
    S += static_cast<std::uint64_t>(std::popcount(n));
  }
  return t.finish();
}

}  // namespace tdq
