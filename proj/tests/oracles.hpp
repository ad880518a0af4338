#pragma once

// Brute-force reference implementations. They use GMP and plain loops only
// and deliberately share no code with the library.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// m / 2^k in canonical form.
inline mpq_class dyadic(std::int64_t m, unsigned k) {
  mpq_class r(mpz_class(static_cast<long>(m)), mpz_class(1) << k);
  r.canonicalize();
  return r;
}

inline mpq_class pow(const mpq_class& b, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::complex<double> pow(std::complex<double> b, unsigned e) {
  std::complex<double> r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// sum_i omega_i q^{i+1}
template <class T>
T s(std::uint64_t n, const T& q) {
  T r = 0;
  for (unsigned i = 0; n != 0; ++i, n >>= 1) {
    if (n & 1U) r += pow(q, i + 1);
  }
  return r;
}

// S(n) = sum_{k<n} s(k), all values for n = 0..n_max.
template <class T>
std::vector<T> S_table(std::uint64_t n_max, const T& q) {
  std::vector<T> out(n_max + 1, T(0));
  for (std::uint64_t n = 1; n <= n_max; ++n) out[n] = out[n - 1] + s(n - 1, q);
  return out;
}

inline mpq_class tau(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class f = x - mpq_class(fl);
  return f <= mpq_class(1, 2) ? f : mpq_class(1 - f);
}

// sum_n a^n tau(2^n x) for dyadic x; stops once 2^n x is an integer.
inline mpq_class takagi(mpq_class x, const mpq_class& a) {
  mpq_class r = 0, an = 1;
  while (x.get_den() != 1) {
    r += an * tau(x);
    an *= a;
    x *= 2;
  }
  return r;
}

inline std::complex<double> takagi(mpq_class x, std::complex<double> a) {
  std::complex<double> r = 0.0, an = 1.0;
  while (x.get_den() != 1) {
    r += an * tau(x).get_d();
    an *= a;
    x *= 2;
  }
  return r;
}

// Radical inverse of j in base 2.
inline mpq_class van_der_corput(std::uint64_t j) {
  mpq_class r = 0, w(1, 2);
  for (; j != 0; j >>= 1, w /= 2) {
    if (j & 1U) r += w;
  }
  return r;
}

// Star discrepancy of a finite point set in [0,1), via the sorted-points formula
// D* = max_i max(i/n - x_(i), x_(i) - (i-1)/n).
inline mpq_class star_discrepancy(std::vector<mpq_class> pts) {
  std::sort(pts.begin(), pts.end());
  const mpq_class n = static_cast<unsigned long>(pts.size());
  mpq_class d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const mpq_class hi = mpq_class(static_cast<unsigned long>(i + 1)) / n - pts[i];
    const mpq_class lo = pts[i] - mpq_class(static_cast<unsigned long>(i)) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

}  // namespace oracle
