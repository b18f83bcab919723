#pragma once

#include "fdsl/numerics.hpp"

#include <functional>
#include <vector>

namespace fdsl {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  int nodes_per_panel = 0;
  int digits = 0;
  std::vector<Real> nodes, weights;
};

/// Rule with `nodes` points at the current thread precision. Rules are
/// computed by Newton iteration on P_nodes and cached per (nodes, digits).
const QuadratureRule& gauss_legendre(int nodes);

using Integrand = std::function<Real(const Real&)>;

/// Composite rule over `panels` equal panels of [a, b]. Per-panel sums are
/// added in panel order, so both versions return identical values. The
/// parallel version needs a thread-safe integrand.
Real integrate_composite_serial(const Integrand& f, const Real& a, const Real& b, int panels,
                                const QuadratureRule& rule);
Real integrate_composite(const Integrand& f, const Real& a, const Real& b, int panels, const QuadratureRule& rule);

struct QuadratureResult {
  Real value;
  int panels = 0;
  bool converged = false;
};

/// Doubles the panel count from `panels` until two successive values agree
/// to `rel_tol` or `max_doublings` is reached.
QuadratureResult integrate_doubling(const Integrand& f, const Real& a, const Real& b, int panels, int nodes_per_panel,
                                    double rel_tol, int max_doublings, bool parallel = true);

}  // namespace fdsl
