#include "fdsl/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace fdsl {

namespace mp = boost::multiprecision;

namespace {

std::unique_ptr<QuadratureRule> build_rule(int N) {
  auto rule = std::make_unique<QuadratureRule>();
  rule->nodes_per_panel = N;
  rule->digits = current_digits();
  rule->nodes.resize(static_cast<std::size_t>(N));
  rule->weights.resize(static_cast<std::size_t>(N));
  const Real pi = fdsl::pi();
  const Real eps = mp::pow(Real(10), -(rule->digits - 3));
  for (int i = 0; i < (N + 1) / 2; ++i) {
    Real x = mp::cos(pi * (Real(i) + Real(0.75)) / (Real(N) + Real(0.5)));
    Real dp;
    for (int it = 0; it < 200; ++it) {
      Real p0(1), p1 = x;
      for (int k = 2; k <= N; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = N * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (mp::abs(dx) <= eps) {
        if (it > 0) break;
      }
    }
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule->nodes[static_cast<std::size_t>(i)] = -x;
    rule->nodes[static_cast<std::size_t>(N - 1 - i)] = x;
    rule->weights[static_cast<std::size_t>(i)] = w;
    rule->weights[static_cast<std::size_t>(N - 1 - i)] = w;
  }
  if (N % 2 == 1) rule->nodes[static_cast<std::size_t>(N / 2)] = 0;
  return rule;
}

Real panel_sum(const Integrand& f, const Real& lo, const Real& half, const QuadratureRule& rule) {
  Real s(0);
  const Real mid = lo + half;
  for (int i = 0; i < rule.nodes_per_panel; ++i) {
    const auto q = static_cast<std::size_t>(i);
    s += rule.weights[q] * f(mid + half * rule.nodes[q]);
  }
  return s * half;
}

}  // namespace

const QuadratureRule& gauss_legendre(int nodes) {
  if (nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nodes, current_digits());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_rule(nodes)).first;
  return *it->second;
}

Real integrate_composite_serial(const Integrand& f, const Real& a, const Real& b, int panels,
                                const QuadratureRule& rule) {
  if (panels < 1) throw std::invalid_argument("panel count must be >= 1");
  const Real h = (b - a) / panels;
  const Real half = h / 2;
  Real total(0);
  for (int p = 0; p < panels; ++p) total += panel_sum(f, a + h * p, half, rule);
  return total;
}

Real integrate_composite(const Integrand& f, const Real& a, const Real& b, int panels, const QuadratureRule& rule) {
  if (panels < 1) throw std::invalid_argument("panel count must be >= 1");
  const PrecisionContext ctx(current_digits());
  const Real h = (b - a) / panels;
  const Real half = h / 2;
  std::vector<Real> partial(static_cast<std::size_t>(panels));
#pragma omp parallel
  {
    PrecisionScope scope(ctx);
#pragma omp for schedule(static)
    for (int p = 0; p < panels; ++p) partial[static_cast<std::size_t>(p)] = panel_sum(f, a + h * p, half, rule);
  }
  Real total(0);
  for (const auto& v : partial) total += v;
  return total;
}

QuadratureResult integrate_doubling(const Integrand& f, const Real& a, const Real& b, int panels, int nodes_per_panel,
                                    double rel_tol, int max_doublings, bool parallel) {
  const QuadratureRule& rule = gauss_legendre(nodes_per_panel);
  auto run = [&](int p) {
    return parallel ? integrate_composite(f, a, b, p, rule) : integrate_composite_serial(f, a, b, p, rule);
  };
  QuadratureResult res;
  Real prev = run(panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    Real next = run(panels);
    const Real diff = mp::abs(next - prev);
    res.value = next;
    res.panels = panels;
    if (diff <= Real(rel_tol) * mp::abs(next)) {
      res.converged = true;
      return res;
    }
    prev = next;
  }
  res.value = prev;
  res.panels = panels;
  return res;
}

}  // namespace fdsl
