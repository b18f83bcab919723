#pragma once

#include "fdsl/problem.hpp"

#include <stdexcept>
#include <vector>

namespace fdsl {

/// Sine-basis matrix of the operator, phi_p = sin(p pi x / X), p = 1..N:
///   A[q][p] = (p pi / X)^4 delta_pq + (2/X) int (q2 phi_p'' + q1 phi_p' + q0 phi_p) phi_q,
/// so that A c = lambda c for u = sum_p c_p phi_p.
struct GalerkinOracle {
  int N = 0;
  Real X;
  std::vector<Real> A;  // row-major

  const Real& at(int row, int col) const { return A[static_cast<std::size_t>(row * N + col)]; }
};

/// int_0^X x^l cos(m pi x / X) and int_0^X x^l sin(m pi x / X) for any
/// integer m (negative m by symmetry).
Real cos_moment(int l, int m, const Real& X);
Real sin_moment(int l, int m, const Real& X);

/// Rows are assembled in parallel; the serial version is the reference.
GalerkinOracle galerkin_assemble(const ProblemSpec& spec, int N);
GalerkinOracle galerkin_assemble_serial(const ProblemSpec& spec, int N);

class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& what, Real residual) : std::runtime_error(what), residual_(std::move(residual)) {}
  const Real& residual() const { return residual_; }

 private:
  Real residual_;
};

struct OracleResult {
  Real eigenvalue;
  int iterations = 0;
  Real residual;  // ||A x - lambda x|| / ||x||
};

/// Shifted inverse iteration with an LU factorisation of A - shift I.
/// Throws OracleError when `max_iter` is exhausted.
OracleResult inverse_iteration(const GalerkinOracle& oracle, const Real& shift, int max_iter = 200);

/// Assembles with N >= 20 and returns the eigenvalue nearest `shift`.
Real galerkin_nearest_eigenvalue(const ProblemSpec& spec, const Real& shift, int N);

}  // namespace fdsl
