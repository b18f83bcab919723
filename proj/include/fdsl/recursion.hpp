#pragma once

#include "fdsl/rhs.hpp"

#include <array>
#include <optional>

namespace fdsl {

struct MomentTable;

/// [a,b] pairs multiply cos/sin, [c,d] pairs multiply cosh/sinh.
enum class Family { trig, hyp };

const char* family_name(Family f);

struct Vec2 {
  Real x, y;
};

struct Mat2 {
  Real m00, m01, m10, m11;

  static Mat2 zero();
  static Mat2 identity();
  /// [[0, -1], [1, 0]]
  static Mat2 rotation();
  /// [[1, 0], [0, -1]]
  static Mat2 reflection();
};

Vec2 operator+(const Vec2& u, const Vec2& v);
Vec2 operator*(const Mat2& m, const Vec2& v);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(const Real& s, const Mat2& m);

/// Index helpers of the initial-condition sums.
struct KroneckerFloorHelpers {
  static int delta(int t, int s) { return t == s ? 1 : 0; }
  /// Floor division for possibly negative numerators.
  static int floor_div(int y, int d);
  /// chi(k): even -> cos (or cosh), odd -> sin (or sinh). Returns true for
  /// the even member.
  static bool chi_is_even(int k) { return k % 2 == 0; }
};

/// Highest three coefficient pairs of one family at step j+1:
/// z[s] = (a, b) or (c, d) at index M - s, s = 0, 1, 2.
using Top3 = std::array<Vec2, 3>;

/// M of the family at step j+1: M(j+1) for trig, M(j) for hyp.
int family_extent(Family f, const StepBudget& budget, int j);

/// Closed-form top coefficients. Returns nullopt when the family has fewer
/// than three stored indices (M < 2). Terms whose right-hand-side index
/// falls outside the stored range contribute zero.
std::optional<Top3> top_initial_coeffs(Family f, const RhsCoefficients& rhs, const ProblemSpec& spec, int n, int j);

/// Block coefficients of Z(p+3) = D1 Z(p+2) + D2 Z(p+1) + D3 Z(p) + F(p+3),
/// Z(q) = pair at index M - q.
struct RecurrenceState {
  Family family;
  int M;
  Real freq;
  const RhsCoefficients* rhs;

  Mat2 D(int col, int p) const;  // col = 1, 2, 3
  Vec2 F(int p) const;           // inhomogeneity F(p+3) for step p
  /// Entry (row, col) of the 3x3 block companion matrix at step p.
  Mat2 block(int row, int col, int p) const;
};

RecurrenceState recurrence_state(Family f, const RhsCoefficients& rhs, const ProblemSpec& spec, int n, int j);

/// Pairs at indices M..0 (position i holds index M - i). Positions 0..2
/// are `top`, positions 3..M are filled by forward iteration over
/// p = 0..M-4. Index 0 is only meaningful after closure.
std::vector<Vec2> run_recurrence(const RecurrenceState& st, const Top3& top);

/// Coefficient at index M - p - 3 from the expanded product form (sums over
/// all block paths). Exponential in p; kept as an independent check.
Vec2 product_form(const RecurrenceState& st, const Top3& top, int p);

/// Index-0 coefficients from the boundary conditions and orthogonality.
struct Closure {
  Real a0, b0, c0, d0;
};

/// `term` holds the step-(j+1) arrays with every index >= 1 filled.
Closure closure_index0(const CorrectionTerm& term, const MomentTable& moments);

/// One full step: top coefficients, recurrence and closure for both
/// families. Any index-0 value from the top formulas is replaced by the
/// closure and its difference recorded in `overrides`.
CorrectionTerm solve_step(const ProblemSpec& spec, int n, int j, const RhsCoefficients& rhs,
                          const MomentTable& moments, std::vector<ClosureOverride>* overrides = nullptr);

}  // namespace fdsl
