#include "tdq/emit.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tdq/takagi.hpp"

namespace tdq {

namespace {

std::string render_t(const Scalar& t, Mode mode) {
  return mode == Mode::ExactRational ? render(t) : render_double(t.to_double());
}

std::vector<std::string> render_value(const Scalar& v) {
  switch (v.mode()) {
    case Mode::ExactRational:
      return {render(v)};
    case Mode::FloatReal:
      return {render_double(v.real())};
    case Mode::FloatComplex:
      return {render_double(v.complex().real()), render_double(v.complex().imag())};
  }
  return {};
}

std::string meta_line(const CurveSamples& c) {
  std::string line = "# kind=" + c.kind;
  for (const auto& [k, v] : c.params) line += ", " + k + "=" + v;
  line += ", mode=" + std::string(mode_name(c.mode));
  line += ", depth=" + std::to_string(c.depth);
  return line;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return out;
}

Mode parse_mode_name(const std::string& s) {
  if (s == "exact") return Mode::ExactRational;
  if (s == "float") return Mode::FloatReal;
  if (s == "complex") return Mode::FloatComplex;
  throw ParseError("unknown mode '" + s + "'");
}

void check_depth(unsigned m) {
  if (m > kMaxGridDepth) throw DomainError("grid depth must be <= 20");
}

std::vector<Scalar> float_grid(unsigned m) {
  std::vector<Scalar> out;
  for (const auto& t : dyadic_grid(m)) out.push_back(Scalar(t.to_double()));
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const CurveSamples& c) {
  os << meta_line(c) << '\n';
  os << (c.complex_columns() ? "t,re,im" : "t,value") << '\n';
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    os << render_t(c.t[i], c.mode);
    for (const auto& cell : render_value(c.values[i])) os << ',' << cell;
    os << '\n';
  }
}

void write_json(std::ostream& os, const CurveSamples& c) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["params"] = params;
  j["mode"] = std::string(mode_name(c.mode));
  j["depth"] = c.depth;
  j["columns"] = c.complex_columns() ? std::vector<std::string>{"t", "re", "im"}
                                     : std::vector<std::string>{"t", "value"};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    std::vector<std::string> row{render_t(c.t[i], c.mode)};
    for (auto& cell : render_value(c.values[i])) row.push_back(std::move(cell));
    rows.push_back(row);
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

CurveSamples read_csv(std::istream& is) {
  CurveSamples c;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
    throw ParseError("curve file must start with a '# ' metadata line");
  }
  for (const auto& field : split(line.substr(2), ", ")) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("bad metadata field '" + field + "'");
    const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "kind") {
      c.kind = value;
    } else if (key == "mode") {
      c.mode = parse_mode_name(value);
    } else if (key == "depth") {
      c.depth = static_cast<unsigned>(std::stoul(value));
    } else {
      c.params.emplace_back(key, value);
    }
  }
  if (!std::getline(is, line)) throw ParseError("missing header row");
  const bool complex = line == "t,re,im";
  if (!complex && line != "t,value") throw ParseError("unexpected header '" + line + "'");
  const Mode t_mode = c.mode == Mode::ExactRational ? Mode::ExactRational : Mode::FloatReal;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ",");
    if (cells.size() != (complex ? 3U : 2U)) throw ParseError("bad row '" + line + "'");
    c.t.push_back(parse_scalar(cells[0], t_mode));
    if (complex) {
      const double re = parse_scalar(cells[1], Mode::FloatReal).real();
      const double im = parse_scalar(cells[2], Mode::FloatReal).real();
      c.values.push_back(Scalar(Complex(re, im)));
    } else {
      c.values.push_back(parse_scalar(cells[1], t_mode));
    }
  }
  return c;
}

CurveSamples curve_takagi(const Scalar& a, unsigned m) {
  check_depth(m);
  CurveSamples c;
  c.kind = "takagi";
  c.params = {{"a", render(a)}};
  c.mode = a.mode();
  c.depth = m;
  c.t = dyadic_grid(m);
  for (const auto& t : c.t) {
    c.values.push_back(takagi_dyadic_exact(DyadicRational::from_scalar(t), a));
  }
  return c;
}

CurveSamples curve_F(const QWeight& q, unsigned m) {
  check_depth(m);
  CurveSamples c;
  c.kind = "F";
  c.params = {{"q", render(q.q())}};
  c.mode = q.mode();
  c.depth = m;
  c.t = dyadic_grid(m);
  for (const auto& t : c.t) c.values.push_back(F_q(DyadicRational::from_scalar(t), q));
  return c;
}

CurveSamples curve_tilde_F(const QWeight& q, unsigned m, double tol) {
  check_depth(m);
  CurveSamples c;
  c.kind = "tildeF";
  c.params = {{"q", render(q.q())}};
  c.mode = Mode::FloatReal;
  c.depth = m;
  c.t = float_grid(m);
  for (const auto& t : c.t) {
    c.values.push_back(q.is_one() ? Scalar(tilde_F_1(t.real(), tol)) : tilde_F_q(t.real(), q, tol));
  }
  return c;
}

CurveSamples curve_G_tilde(const Scalar& gamma, unsigned m, double tol) {
  check_depth(m);
  CurveSamples c;
  c.kind = "Gtilde";
  c.params = {{"gamma", render(gamma)}};
  c.mode = gamma.is_real() ? Mode::FloatReal : Mode::FloatComplex;
  c.depth = m;
  c.t = float_grid(m);
  // The periodic function is sampled on [0, 1); t = 1 reports the limit from the left.
  for (const auto& t : c.t) {
    const double x = t.real() == 1.0 ? std::nextafter(1.0, 0.0) : t.real();
    c.values.push_back(G_tilde_gamma(x, gamma, tol));
  }
  return c;
}

CurveSamples curve_fluctuation(const QWeight& q, unsigned N, const Normalizer& norm, unsigned m) {
  check_depth(m);
  if (N == 0 || N > 24) throw DomainError("N must be in 1..24");
  const Natural l = Natural{1} << N;
  const auto sums = S_q_direct_table(l, q);
  const auto grid = dyadic_grid(m);
  const FluctuationCurve curve = phi_curve(sums, l, grid, norm);
  CurveSamples c;
  c.kind = "fluctuation";
  c.params = {{"q", render(q.q())}, {"l", std::to_string(l)}, {"R", render(curve.R)}};
  c.mode = curve.values.front().mode();
  c.depth = m;
  c.t = curve.grid;
  c.values = curve.values;
  return c;
}

CurveSamples to_float(CurveSamples c) {
  if (c.mode != Mode::ExactRational) return c;
  c.mode = Mode::FloatReal;
  for (auto& t : c.t) t = promote(t, Mode::FloatReal);
  for (auto& v : c.values) v = promote(v, Mode::FloatReal);
  return c;
}

std::vector<std::string> write_figures(const std::filesystem::path& dir, unsigned m, double tol) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::pair<std::string, CurveSamples>> panels;
  const std::pair<const char*, Scalar> fig1[] = {
      {"fig1_a-0.5.csv", Scalar::exact(-1, 2)},
      {"fig1_a0.5.csv", Scalar::exact(1, 2)},
      {"fig1_a0.667.csv", Scalar::exact(2, 3)},
      {"fig1_a0.25.csv", Scalar::exact(1, 4)},
  };
  for (const auto& [name, a] : fig1) panels.emplace_back(name, to_float(curve_takagi(a, m)));

  panels.emplace_back("fig2_F_q0.667.csv", to_float(curve_F(QWeight(Scalar::exact(2, 3)), m)));

  const std::pair<const char*, Scalar> tilde[] = {
      {"fig_tildeF_q0.667.csv", Scalar::exact(2, 3)},
      {"fig_tildeF_q1.csv", Scalar::exact(1)},
      {"fig_tildeF_q1.5.csv", Scalar::exact(3, 2)},
      {"fig_tildeF_q4.csv", Scalar::exact(4)},
  };
  for (const auto& [name, q] : tilde) panels.emplace_back(name, curve_tilde_F(QWeight(q), m, tol));

  const std::pair<const char*, Complex> fig3[] = {
      {"fig3_q_i.csv", Complex(0.0, 1.0)},
      {"fig3_q_0.5+0.5i.csv", Complex(0.5, 0.5)},
      {"fig3_q_0.5-0.5i.csv", Complex(0.5, -0.5)},
  };
  for (const auto& [name, q] : fig3) {
    const QWeight w{Scalar(q)};
    CurveSamples c = curve_takagi(w.a(), m);
    c.params.insert(c.params.begin(), {"q", render(w.q())});
    panels.emplace_back(name, std::move(c));
  }

  std::vector<std::string> names;
  for (const auto& [name, curve] : panels) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + (dir / name).string());
    write_csv(out, curve);
    if (!out) throw std::ios_base::failure("write failed for " + (dir / name).string());
    names.push_back(name);
  }
  return names;
}

}  // namespace tdq
