#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tdq/dyadic.hpp"
#include "tdq/odometer.hpp"
#include "tdq/scalar.hpp"

namespace tdq {

inline constexpr unsigned kMaxGridDepth = 20;

/// A sampled curve plus the metadata written in its comment line.
struct CurveSamples {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  Mode mode = Mode::ExactRational;
  unsigned depth = 0;
  std::vector<Scalar> t;
  std::vector<Scalar> values;

  bool complex_columns() const { return mode == Mode::FloatComplex; }
};

/**
 * CSV layout (LF line endings):
 *   # kind=takagi, a=1/2, mode=exact, depth=10
 *   t,value            (or t,re,im for complex values)
 *   0,0
 *   ...
 * Exact curves render p/q, float curves 17 significant digits.
 */
void write_csv(std::ostream& os, const CurveSamples& c);
void write_json(std::ostream& os, const CurveSamples& c);
CurveSamples read_csv(std::istream& is);

/// T_a on {j/2^m}; exact route, values in a's mode (complex a gives re/im columns).
CurveSamples curve_takagi(const Scalar& a, unsigned m);
/// F_q on {j/2^m}.
CurveSamples curve_F(const QWeight& q, unsigned m);
/// tilde F_q on {j/2^m} in floats; q = 1 uses tilde F_1.
CurveSamples curve_tilde_F(const QWeight& q, unsigned m, double tol);
/// G~ with limit gamma on {j/2^m} in floats.
CurveSamples curve_G_tilde(const Scalar& gamma, unsigned m, double tol);
/// Fluctuation curve of s_q over l = 2^N on {j/2^m}.
CurveSamples curve_fluctuation(const QWeight& q, unsigned N, const Normalizer& norm, unsigned m);

/// Converts an exact curve to FloatReal/FloatComplex rendering.
CurveSamples to_float(CurveSamples c);

/// Writes one CSV per figure panel into `dir`; returns the file names written.
std::vector<std::string> write_figures(const std::filesystem::path& dir, unsigned m, double tol);

}  // namespace tdq
