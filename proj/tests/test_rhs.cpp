#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fdsl;
namespace mp = boost::multiprecision;

namespace {

const PrecisionContext kCtx(test::kDigits);

}  // namespace

TEST_CASE("first right-hand side for q0 = x") {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example2_problem();
  const Real sqrt2 = mp::sqrt(Real(2));
  for (int n : {1, 2, 7}) {
    const BasePair b = base_pair(spec, n);
    History h;
    h.terms.push_back(b.term);
    h.lambdas = {b.lambda0, Real(1) / 2};
    const RhsCoefficients f = build_rhs(spec, n, 0, h);
    REQUIRE(f.f_sin.size() == 2);
    REQUIRE(f.f_cos.size() == 2);
    CHECK(f.f_cosh.empty());
    CHECK(f.f_sinh.empty());
    CHECK(test::rel_diff(f.f_sin[0], sqrt2 / 2) <= test::ten_pow(-295));
    CHECK(test::rel_diff(f.f_sin[1], -sqrt2) <= test::ten_pow(-295));
    CHECK(f.f_cos[0] == 0);
    CHECK(f.f_cos[1] == 0);
  }
}

TEST_CASE("zero potentials give a zero right-hand side") {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = zero_problem(Real(2));
  const BasePair b = base_pair(spec, 3);
  History h;
  h.terms.push_back(b.term);
  h.lambdas.push_back(b.lambda0);
  const MomentTable mo = moments(3, spec.X, 4);
  const Real l1 = lambda_correction(0, 3, spec, h, mo);
  CHECK(l1 == 0);
  h.lambdas.push_back(l1);
  const RhsCoefficients f = build_rhs(spec, 3, 0, h);
  for (const auto& v : f.f_cos) CHECK(v == 0);
  for (const auto& v : f.f_sin) CHECK(v == 0);
}

TEST_CASE("first right-hand side of the quartic problem, pointwise") {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example1_problem();
  const FDSolution sol = solve(spec, 1, 1, kCtx);
  const RhsCoefficients f = build_rhs(spec, 1, 0, test::history_for(sol, 0));
  CHECK(f.f_cos.size() == 5);
  CHECK(f.f_cosh.empty());
  const BasisExpansion F = rhs_expansion(f, sol.terms[0].u.freq);
  for (int i = 0; i < 50; ++i) {
    const Real x = spec.X * i / 49;
    CHECK(mp::abs(evaluate(F, x) - test::rhs_direct(sol, spec, 0, x)) <= test::ten_pow(-(kCtx.digits - 20)));
  }
}

TEST_CASE("pointwise reconstruction and solvability at every step") {
  PrecisionScope scope(kCtx);
  std::mt19937 rng(2024);
  std::vector<ProblemSpec> specs{example1_problem(), example2_problem()};
  for (int i = 0; i < 5; ++i) specs.push_back(test::random_problem(rng));
  const Real tol = test::ten_pow(-(kCtx.digits - 20));
  for (const ProblemSpec& spec : specs) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 6;
    const FDSolution sol = solve(spec, n, m, kCtx);
    const MomentTable mo = moments(n, spec.X, StepBudget(spec).M(m) + spec.r());
    for (int j = 0; j < m; ++j) {
      const RhsCoefficients f = build_rhs(spec, n, j, test::history_for(sol, j));
      const StepBudget budget(spec);
      CHECK(static_cast<int>(f.f_cos.size()) == budget.M(j + 1));
      CHECK(static_cast<int>(f.f_cosh.size()) == std::max(budget.M(j), 0));
      const BasisExpansion F = rhs_expansion(f, sol.terms[0].u.freq);
      for (int k = 0; k < 100; ++k) {
        const Real x = spec.X * test::uniform(rng, 0, 1);
        CAPTURE(spec.name);
        CAPTURE(j);
        CHECK(mp::abs(evaluate(F, x) - test::rhs_direct(sol, spec, j, x)) <= tol);
      }
      CHECK(mp::abs(test::solvability(f, mo)) <= tol);
    }
  }
}

TEST_CASE("missing history is a state error") {
  PrecisionScope scope(kCtx);
  const ProblemSpec spec = example2_problem();
  const BasePair b = base_pair(spec, 1);
  History h;
  h.terms.push_back(b.term);
  h.lambdas.push_back(b.lambda0);
  CHECK_THROWS_AS(build_rhs(spec, 1, 0, h), StateError);
  h.lambdas.push_back(Real(1) / 2);
  CHECK_THROWS_AS(build_rhs(spec, 1, 1, h), StateError);
  CHECK_NOTHROW(build_rhs(spec, 1, 0, h));
}

TEST_CASE("ceiling division") {
  CHECK(ceil_div(0, 1) == 0);
  CHECK(ceil_div(1, 1) == 1);
  CHECK(ceil_div(2, 1) == 1);
  CHECK(ceil_div(3, 1) == 2);
  CHECK(ceil_div(5, 4) == 1);
  CHECK(ceil_div(6, 4) == 2);
}
