#include "tdq/cli.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <regex>

#include <CLI11.hpp>

#include "tdq/digits.hpp"
#include "tdq/dyadic.hpp"
#include "tdq/emit.hpp"
#include "tdq/odometer.hpp"
#include "tdq/takagi.hpp"
#include "tdq/trollope.hpp"
#include "tdq/verify.hpp"

namespace tdq {

namespace {

constexpr double kVerifyTol = 1e-9;

struct RunConfig {
  std::string command;
  std::string sub;
  std::string q, a, x, u, t, omega = "0", R = "maxabs", gamma = "1";
  std::string mode, format = "csv", out;
  Natural n = 0, n_max = 4096, steps = 8, l = 0, n_limit = Natural{1} << 62;
  unsigned N = 0, grid = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;

  std::map<std::string, bool> given;
  bool has(const std::string& name) const {
    auto it = given.find(name);
    return it != given.end() && it->second;
  }
};

bool looks_complex(const std::string& s) { return s.find('i') != std::string::npos; }

bool looks_rational(const std::string& s) {
  static const std::regex re("-?[0-9]+(/[0-9]+)?");
  return std::regex_match(s, re);
}

std::optional<Mode> requested_mode(const RunConfig& cfg) {
  if (cfg.mode.empty()) return std::nullopt;
  if (cfg.mode == "exact") return Mode::ExactRational;
  if (cfg.mode == "float") return Mode::FloatReal;
  return Mode::FloatComplex;
}

// Rational text defaults to exact; text containing 'i' forces complex.
Scalar parse_param(const std::string& text, const RunConfig& cfg) {
  const auto req = requested_mode(cfg);
  if (looks_complex(text)) {
    if (req == Mode::ExactRational) throw ParseError("exact mode requires rational input, got '" + text + "'");
    return parse_scalar(text, Mode::FloatComplex);
  }
  if (req) return parse_scalar(text, *req);
  return parse_scalar(text, looks_rational(text) ? Mode::ExactRational : Mode::FloatReal);
}

double parse_real_arg(const std::string& text, const char* name) {
  if (text.empty()) throw ParseError(std::string("--") + name + " is required");
  return parse_scalar(text, Mode::FloatReal).real();
}

QWeight weight_of(const RunConfig& cfg) {
  if (cfg.has("q")) return QWeight(parse_param(cfg.q, cfg));
  if (cfg.has("a")) return QWeight::from_a(parse_param(cfg.a, cfg));
  throw ParseError("--q or --a is required");
}

Scalar a_of(const RunConfig& cfg) {
  if (cfg.has("a")) return parse_param(cfg.a, cfg);
  if (cfg.has("q")) return QWeight(parse_param(cfg.q, cfg)).a();
  throw ParseError("--a or --q is required");
}

Natural checked_n(Natural n, const RunConfig& cfg, const char* name) {
  if (n > cfg.n_limit) {
    throw DomainError(std::string("--") + name + " exceeds the limit " + std::to_string(cfg.n_limit) +
                      " (raise it with --n-limit)");
  }
  return n;
}

Natural require_n(const RunConfig& cfg) {
  if (!cfg.has("n")) throw ParseError("--n is required");
  return checked_n(cfg.n, cfg, "n");
}

double tol_or(const RunConfig& cfg, double fallback) { return cfg.has("tol") ? cfg.tol : fallback; }

unsigned grid_or(const RunConfig& cfg, unsigned fallback) {
  const unsigned m = cfg.has("grid") ? cfg.grid : fallback;
  if (m > kMaxGridDepth) throw DomainError("--grid must be <= 20");
  return m;
}

bool is_dyadic(const Rational& r) {
  const auto& den = r.get_den();
  return mpz_popcount(den.get_mpz_t()) == 1 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 64;
}

void with_output(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (cfg.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open " + cfg.out + " for writing");
  write(file);
  file.flush();
  if (!file) throw std::ios_base::failure("write failed for " + cfg.out);
}

void emit(const RunConfig& cfg, const CurveSamples& c, std::ostream& out) {
  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == "json") {
      write_json(os, c);
    } else {
      write_csv(os, c);
    }
  });
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.sub;
  if (s == "sq") {
    out << render(s_q(require_n(cfg), weight_of(cfg))) << '\n';
  } else if (s == "Sq") {
    const Natural n = require_n(cfg);
    const QWeight q = weight_of(cfg);
    out << render(n == 0 ? Scalar::zero(q.mode()) : S_q_recursive(n, q)) << '\n';
  } else if (s == "takagi") {
    const Scalar a = a_of(cfg);
    if (cfg.x.empty()) throw ParseError("--x is required");
    const Scalar x = parse_param(cfg.x, cfg);
    if (!x.is_real()) throw ModeError("x must be real");
    if (x.is_exact() && is_dyadic(x.rational())) {
      out << render(takagi_dyadic_exact(DyadicRational::from_rational(x.rational()), a)) << '\n';
    } else {
      out << render(takagi_series(x, a, tol_or(cfg, kDefaultTol))) << '\n';
    }
  } else if (s == "hatF") {
    const QWeight q = weight_of(cfg);
    if (cfg.has("n")) {
      out << render(hat_F_q_log2(require_n(cfg), q)) << '\n';
    } else {
      out << render(hat_F_q(parse_real_arg(cfg.u, "u"), q, tol_or(cfg, kDefaultTol))) << '\n';
    }
  } else if (s == "tildeF") {
    const QWeight q = weight_of(cfg);
    const double u = parse_real_arg(cfg.u, "u");
    const double tol = tol_or(cfg, kDefaultTol);
    out << (q.is_one() ? render_double(tilde_F_1(u, tol)) : render(tilde_F_q(u, q, tol))) << '\n';
  } else if (s == "tildeF1") {
    if (cfg.has("n")) {
      out << render_double(tilde_F_1_log2(require_n(cfg))) << '\n';
    } else {
      out << render_double(tilde_F_1(parse_real_arg(cfg.t, "t"), tol_or(cfg, kDefaultTol))) << '\n';
    }
  } else if (s == "Gq") {
    out << render(G_q(require_n(cfg), weight_of(cfg))) << '\n';
  } else if (s == "vdc") {
    out << render(vdc_star_discrepancy(require_n(cfg))) << '\n';
  } else {
    throw ParseError("unknown eval subcommand '" + s + "'");
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.sub;
  const Natural n_max = checked_n(cfg.n_max, cfg, "n-max");
  const double tol = tol_or(cfg, kVerifyTol);
  SweepReport report;
  if (s == "theorem1") {
    report = verify_theorem1(weight_of(cfg), n_max, tol);
  } else if (s == "dyadic") {
    report = verify_dyadic(weight_of(cfg), n_max, tol);
  } else if (s == "prop2") {
    report = verify_prop2(weight_of(cfg), 1, cfg.has("N") ? cfg.N : 12, tol);
  } else if (s == "recursions") {
    report = verify_recursions(weight_of(cfg), n_max, tol);
  } else if (s == "corollary") {
    report = verify_corollary(weight_of(cfg), n_max, tol);
  } else if (s == "larcher") {
    report = verify_larcher(parse_param(cfg.gamma, cfg), n_max, tol);
  } else if (s == "vdc") {
    report = verify_vdc(n_max);
  } else if (s == "classic") {
    report = verify_classic(n_max, tol);
  } else {
    throw ParseError("unknown verify subcommand '" + s + "'");
  }
  out << report.summary() << '\n';
  return report.pass ? kExitOk : kExitViolation;
}

Normalizer normalizer_of(const RunConfig& cfg, const QWeight& q, Natural l) {
  if (cfg.R == "maxabs") return Normalizer::max_abs();
  if (cfg.R == "auto-prop2") {
    if (l < 2 || !std::has_single_bit(l)) throw DomainError("--R auto-prop2 needs l a power of two >= 2");
    const unsigned N = floor_log2(l);
    return Normalizer::fixed(int_pow(Scalar::from_natural(2, q.mode()) * q.q(), N - 1));
  }
  return Normalizer::fixed(promote(parse_param(cfg.R, cfg), q.mode()));
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.sub;
  const unsigned m = grid_or(cfg, 10);
  const double tol = tol_or(cfg, kDefaultTol);
  CurveSamples c;
  if (s == "takagi") {
    c = curve_takagi(a_of(cfg), m);
  } else if (s == "complex-takagi") {
    const Scalar a = a_of(cfg);
    c = curve_takagi(promote(a, Mode::FloatComplex), m);
  } else if (s == "F") {
    c = curve_F(weight_of(cfg), m);
  } else if (s == "tildeF") {
    c = curve_tilde_F(weight_of(cfg), m, tol);
  } else if (s == "Gtilde") {
    c = curve_G_tilde(parse_param(cfg.gamma, cfg), m, tol);
  } else if (s == "fluctuation") {
    const QWeight q = weight_of(cfg);
    const unsigned N = cfg.has("N") ? cfg.N : 10;
    if (N == 0 || N > 24) throw DomainError("--N must be in 1..24");
    c = curve_fluctuation(q, N, normalizer_of(cfg, q, Natural{1} << N), m);
  } else {
    throw ParseError("unknown curve subcommand '" + s + "'");
  }
  emit(cfg, c, out);
  return kExitOk;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  const std::filesystem::path dir = cfg.out.empty() ? "figures" : cfg.out;
  for (const auto& name : write_figures(dir, grid_or(cfg, 10), tol_or(cfg, kDefaultTol))) {
    out << (dir / name).string() << '\n';
  }
  return kExitOk;
}

OdometerPoint omega_of(const RunConfig& cfg) {
  if (cfg.omega == "random") {
    std::mt19937_64 rng(cfg.seed);
    return OdometerPoint::random(rng);
  }
  return OdometerPoint::parse(cfg.omega);
}

std::string value_of(const OdometerPoint& w) {
  const auto& bits = w.bits();
  Natural v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    if (i >= 64) return "-";
    v |= Natural{1} << i;
  }
  return std::to_string(v);
}

int cmd_odometer(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.sub;
  OdometerPoint omega = omega_of(cfg);
  if (s == "run") {
    const Natural steps = checked_n(cfg.steps, cfg, "steps");
    std::optional<QWeight> q;
    if (cfg.has("q") || cfg.has("a")) q = weight_of(cfg);
    std::optional<Scalar> sum;
    out << "j\tomega\tvalue" << (q ? "\ts_q\tsum" : "") << '\n';
    for (Natural j = 0; j < steps; ++j) {
      out << j << '\t' << omega.to_string() << '\t' << value_of(omega);
      if (q) {
        const Scalar sj = s_q_point(omega, *q);
        sum = sum ? *sum + sj : sj;
        out << '\t' << render(sj) << '\t' << render(*sum);
      }
      out << '\n';
      if (j + 1 < steps) omega.step();
    }
  } else if (s == "birkhoff") {
    const QWeight q = weight_of(cfg);
    const Natural n = cfg.has("n") ? require_n(cfg) : Natural{1} << 20;
    if (n == 0) throw DomainError("--n must be >= 1");
    std::vector<Natural> checkpoints;
    for (Natural p = 1; p < n; p <<= 1) checkpoints.push_back(p);
    checkpoints.push_back(n);
    out << "n\tdeviation\tabs\n";
    for (const Natural p : checkpoints) {
      const Scalar d = birkhoff_deviation(omega, q, p);
      out << p << '\t' << (d.is_exact() ? render_double(d.to_double()) : render(d)) << '\t'
          << render_double(modulus(d)) << '\n';
    }
  } else if (s == "fluctuation") {
    const QWeight q = weight_of(cfg);
    const Natural l = checked_n(cfg.has("l") ? cfg.l : 1024, cfg, "l");
    if (l == 0 || l > (Natural{1} << 24)) throw DomainError("--l must be in 1..2^24");
    const unsigned m = grid_or(cfg, 10);
    const auto sums = ergodic_partial_sums(omega, q, l);
    const auto grid = dyadic_grid(m);
    const FluctuationCurve curve = phi_curve(sums, l, grid, normalizer_of(cfg, q, l));
    const Scalar dist = sup_distance_to_limit(curve, q, tol_or(cfg, kDefaultTol));
    CurveSamples c;
    c.kind = "fluctuation";
    c.params = {{"q", render(q.q())},        {"omega", omega.to_string()},
                {"l", std::to_string(l)},    {"R", render(curve.R)},
                {"sup_dist", render(dist)}};
    c.mode = curve.values.front().mode();
    c.depth = m;
    c.t = curve.grid;
    c.values = curve.values;
    emit(cfg, c, out);
    if (!cfg.out.empty()) out << "sup distance " << render(dist) << '\n';
  } else if (s == "search") {
    const QWeight q = weight_of(cfg);
    const Natural l_max = checked_n(cfg.has("l") ? cfg.l : 4096, cfg, "l");
    if (l_max > (Natural{1} << 24)) throw DomainError("--l must be <= 2^24");
    std::vector<Natural> candidates;
    for (Natural l = 2; l <= l_max; l <<= 1) candidates.push_back(l);
    if (candidates.empty()) throw DomainError("--l must be >= 2");
    const auto grid = dyadic_grid(grid_or(cfg, 3));
    const StabilizerReport report = stabilizer_search(omega, q, candidates, grid);
    out << "l\tdistance\n";
    for (const auto& e : report.profile) out << e.l << '\t' << render_double(e.distance) << '\n';
    out << "best l " << report.best_l << ", distance " << render_double(report.best_distance) << '\n';
  } else {
    throw ParseError("unknown odometer subcommand '" + s + "'");
  }
  return kExitOk;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "eval") return cmd_eval(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "curve") return cmd_curve(cfg, out);
  if (cfg.command == "figures") return cmd_figures(cfg, out);
  if (cfg.command == "odometer") return cmd_odometer(cfg, out);
  throw ParseError("unknown command '" + cfg.command + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"q-weighted binary digit sums, Takagi-Landsberg curves and odometer limits", "tdq"};
  app.add_option("command", cfg.command, "eval | verify | curve | figures | odometer")->required();
  app.add_option("subcommand", cfg.sub, "subcommand of the chosen command");

  std::map<std::string, CLI::Option*> opts;
  opts["q"] = app.add_option("--q", cfg.q, "weight q (p/q, decimal or complex like 1/2+1/2i)");
  opts["a"] = app.add_option("--a", cfg.a, "Takagi parameter a = 1/(2q)");
  opts["n"] = app.add_option("--n", cfg.n, "argument n");
  opts["n-max"] = app.add_option("--n-max", cfg.n_max, "sweep bound (default 4096)");
  opts["N"] = app.add_option("--N", cfg.N, "window exponent, l = 2^N");
  opts["grid"] = app.add_option("--grid", cfg.grid, "grid depth m, 2^m + 1 samples (<= 20)");
  opts["tol"] = app.add_option("--tol", cfg.tol, "float tolerance");
  opts["mode"] = app.add_option("--mode", cfg.mode, "exact | float | complex")
                     ->check(CLI::IsMember({"exact", "float", "complex"}));
  opts["format"] = app.add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  opts["out"] = app.add_option("--out", cfg.out, "output file (figures: directory)");
  opts["seed"] = app.add_option("--seed", cfg.seed, "seed for --omega random");
  opts["x"] = app.add_option("--x", cfg.x, "point in [0, 1]");
  opts["u"] = app.add_option("--u", cfg.u, "fractional log2 in [0, 1]");
  opts["t"] = app.add_option("--t", cfg.t, "argument of tildeF1");
  opts["omega"] = app.add_option("--omega", cfg.omega, "odometer point: LSB-first bits, 0 or random");
  opts["steps"] = app.add_option("--steps", cfg.steps, "odometer run length");
  opts["l"] = app.add_option("--l", cfg.l, "fluctuation window (search: largest candidate)");
  opts["R"] = app.add_option("--R", cfg.R, "auto-prop2 | maxabs | scalar");
  opts["gamma"] = app.add_option("--gamma", cfg.gamma, "limit of the weight sequence (larcher, Gtilde)");
  opts["n-limit"] = app.add_option("--n-limit", cfg.n_limit, "largest accepted n (default 2^62)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  for (const auto& [name, opt] : opts) cfg.given[name] = opt->count() > 0;

  try {
    return dispatch(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ModeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace tdq
