#include "fdsl/problem.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace fdsl {

namespace mp = boost::multiprecision;

Real Polynomial::coeff(int l) const {
  if (l < 0 || l >= static_cast<int>(coeffs.size())) return Real(0);
  return coeffs[static_cast<std::size_t>(l)];
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Real& c) { return c == 0; });
}

Real poly_eval(const Polynomial& p, const Real& x) {
  Real acc(0);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial poly_derivative(const Polynomial& p, int order) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  Polynomial out = p;
  for (int k = 0; k < order; ++k) {
    if (out.coeffs.size() <= 1) {
      out.coeffs.assign(1, Real(0));
      continue;
    }
    std::vector<Real> next(out.coeffs.size() - 1);
    for (std::size_t l = 1; l < out.coeffs.size(); ++l) next[l - 1] = out.coeffs[l] * static_cast<long>(l);
    out.coeffs = std::move(next);
  }
  if (out.coeffs.empty()) out.coeffs.assign(1, Real(0));
  return out;
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  std::size_t n = std::max(p.coeffs.size(), q.coeffs.size());
  std::vector<Real> c(n);
  for (std::size_t l = 0; l < n; ++l) c[l] = p.coeff(static_cast<int>(l)) + q.coeff(static_cast<int>(l));
  return Polynomial(std::move(c));
}

Polynomial poly_scale(const Polynomial& p, const Real& s) {
  Polynomial out = p;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

Polynomial poly_padded(const Polynomial& p, int degree) {
  Polynomial out = p;
  if (out.degree() < degree) out.coeffs.resize(static_cast<std::size_t>(degree + 1), Real(0));
  return out;
}

Real sup_norm(const Polynomial& p, const Real& X) {
  if (X <= 0) throw std::invalid_argument("sup_norm needs X > 0");
  const int samples = 64 * (std::max(p.degree(), 0) + 1);
  Real best(-1);
  int best_i = 0;
  for (int i = 0; i <= samples; ++i) {
    Real x = X * i / samples;
    Real v = mp::abs(poly_eval(p, x));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  // Golden-section search for a maximum of |p| on the neighbouring bracket.
  Real lo = X * std::max(best_i - 1, 0) / samples;
  Real hi = X * std::min(best_i + 1, samples) / samples;
  const Real invphi = (mp::sqrt(Real(5)) - 1) / 2;
  Real a = hi - invphi * (hi - lo);
  Real b = lo + invphi * (hi - lo);
  Real fa = mp::abs(poly_eval(p, a));
  Real fb = mp::abs(poly_eval(p, b));
  const Real tol = X * Real("1e-15");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - invphi * (hi - lo);
      fa = mp::abs(poly_eval(p, a));
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + invphi * (hi - lo);
      fb = mp::abs(poly_eval(p, b));
    }
  }
  return std::max(best, std::max(fa, fb));
}

ProblemSpec::ProblemSpec(std::string name_, Real X_, Polynomial q0_, Polynomial q1_, Polynomial q2_,
                         std::string fixture_)
    : name(std::move(name_)),
      X(std::move(X_)),
      q0(poly_padded(q0_, 1)),
      q1(poly_padded(q1_, 1)),
      q2(poly_padded(q2_, 1)),
      fixture(std::move(fixture_)) {
  if (!(X > 0)) throw std::invalid_argument("interval length X must be positive");
}

int ProblemSpec::r() const { return std::max({q0.degree(), q1.degree(), q2.degree()}); }

ProblemSpec at_current_precision(const ProblemSpec& spec) {
  auto widen = [](const Polynomial& p) {
    Polynomial out;
    for (const Real& c : p.coeffs) out.coeffs.push_back(at_current_precision(c));
    return out;
  };
  ProblemSpec out(spec.name, at_current_precision(spec.X), widen(spec.q0), widen(spec.q1), widen(spec.q2), spec.fixture);
  if (spec.stated_omega) out.stated_omega = at_current_precision(*spec.stated_omega);
  return out;
}

Real omega(const ProblemSpec& spec) {
  // max{ |q2|, |2 q2' - q1|, |q2'' - q1' + q0| } on [0, X]
  Polynomial g1 = poly_add(poly_scale(poly_derivative(spec.q2, 1), Real(2)), poly_scale(spec.q1, Real(-1)));
  Polynomial g0 = poly_add(poly_add(poly_derivative(spec.q2, 2), poly_scale(poly_derivative(spec.q1, 1), Real(-1))),
                           spec.q0);
  return std::max(sup_norm(spec.q2, spec.X), std::max(sup_norm(g1, spec.X), sup_norm(g0, spec.X)));
}

ConfigError::ConfigError(int line, const std::string& message, const std::string& source)
    : std::runtime_error((source.empty() ? std::string("line ") : source + ":") + std::to_string(line) + ": " +
                         message),
      line_(line),
      message_(message) {}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Polynomial parse_coefficient_list(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw ConfigError(line, "coefficient list must be written as [c0, c1, ...]");
  }
  std::string body = value.substr(1, value.size() - 2);
  std::vector<Real> coeffs;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (t.empty()) throw ConfigError(line, "empty entry in coefficient list");
    try {
      coeffs.push_back(parse_real(t));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line, e.what());
    }
  }
  if (coeffs.empty()) throw ConfigError(line, "coefficient list is empty");
  return Polynomial(std::move(coeffs));
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> values;
  std::stringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line != "[problem]") throw ConfigError(line_no, "unknown section " + line);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    static const char* known[] = {"name", "X", "q0", "q1", "q2", "fixture", "omega"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
    if (values.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    values[key] = {value, line_no};
  }
  auto require = [&](const std::string& key) -> const std::pair<std::string, int>& {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(line_no, "missing required key '" + key + "'");
    return it->second;
  };
  const auto& [x_text, x_line] = require("X");
  Real X;
  try {
    X = parse_real(x_text);
  } catch (const std::exception& e) {
    throw ConfigError(x_line, e.what());
  }
  if (!(X > 0)) throw ConfigError(x_line, "X must be positive");
  auto poly = [&](const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) return Polynomial({Real(0)});
    return parse_coefficient_list(it->second.first, it->second.second);
  };
  std::string name = values.count("name") ? values["name"].first : std::string("problem");
  std::string fixture = values.count("fixture") ? values["fixture"].first : std::string();
  if (!fixture.empty() && fixture != "ex1" && fixture != "ex2") {
    throw ConfigError(values["fixture"].second, "fixture must be 'ex1' or 'ex2'");
  }
  ProblemSpec spec(name, X, poly("q0"), poly("q1"), poly("q2"), fixture);
  if (auto it = values.find("omega"); it != values.end()) {
    try {
      spec.stated_omega = parse_real(it->second.first);
    } catch (const std::exception& e) {
      throw ConfigError(it->second.second, e.what());
    }
    if (*spec.stated_omega < 0) throw ConfigError(it->second.second, "omega must be >= 0");
  }
  return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.line(), e.message(), path.string());
  }
}

ProblemSpec example1_problem() {
  ProblemSpec spec("example1", Real(5), Polynomial({Real("-0.02"), Real(0), Real(0), Real(0), Real("0.0001")}),
                   Polynomial({Real(0), Real("-0.04")}), Polynomial({Real(0), Real(0), Real("-0.02")}), "ex1");
  spec.stated_omega = Real("0.2");
  return spec;
}

ProblemSpec example2_problem() {
  return ProblemSpec("example2", Real(1), Polynomial({Real(0), Real(1)}), Polynomial({Real(0)}),
                     Polynomial({Real(0)}), "ex2");
}

ProblemSpec zero_problem(const Real& X) {
  return ProblemSpec("zero", X, Polynomial({Real(0)}), Polynomial({Real(0)}), Polynomial({Real(0)}));
}

}  // namespace fdsl
