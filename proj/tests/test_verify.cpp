#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdsl/galerkin.hpp"
#include "fdsl/verify.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace fdsl;
namespace mp = boost::multiprecision;

TEST_CASE("residual of the unperturbed problem vanishes") {
  const PrecisionContext ctx(100);
  PrecisionScope scope(ctx);
  const ProblemSpec spec("zero", Real(2), Polynomial(), Polynomial(), Polynomial());
  const FDSolution sol = solve(spec, 3, 4, ctx);
  const ResidualResult r = residual_norm(sol, spec);
  CHECK(r.norm <= test::ten_pow(-90));
  CHECK_FALSE(r.flagged);
}

TEST_CASE("residual expansion evaluates the operator pointwise") {
  const PrecisionContext ctx(100);
  PrecisionScope scope(ctx);
  const ProblemSpec spec = example1_problem();
  const FDSolution sol = solve(spec, 2, 3, ctx);
  const BasisExpansion u = sol.eigenfunction();
  const BasisExpansion phi = residual_expansion(u, sol.lambda_approx, spec);
  const BasisExpansion u1 = derivative(u, 1), u2 = derivative(u, 2), u4 = derivative(u, 4);
  for (const Real x : {Real("0.3"), Real("1.7"), Real("4.9")}) {
    const Real direct = evaluate(u4, x) + poly_eval(spec.q2, x) * evaluate(u2, x) +
                        poly_eval(spec.q1, x) * evaluate(u1, x) +
                        (poly_eval(spec.q0, x) - sol.lambda_approx) * evaluate(u, x);
    CHECK(mp::abs(evaluate(phi, x) - direct) <= test::ten_pow(-85));
  }
}

TEST_CASE("residual norms for q0 = x") {
  const PrecisionContext ctx(100);
  PrecisionScope scope(ctx);
  const ProblemSpec spec = example2_problem();
  const FDSolution s1 = solve(spec, 1, 10, ctx);
  const ResidualResult r10 = residual_norm(s1, spec);
  CHECK(within_factor(to_double(r10.norm) / 2.8e-39, 2));
  const FDSolution s5 = solve(spec, 5, 3, ctx);
  CHECK(within_factor(to_double(residual_norm(s5, spec).norm) / 1.9e-17, 2));

  Real prev(1);
  for (int m = 0; m <= 10; ++m) {
    const Real d = residual_norm(s1, spec, m).norm;
    CHECK(d < prev);
    prev = d;
  }
  Real prev_n(1);
  for (int n = 1; n <= 6; ++n) {
    const Real d = residual_norm(solve(spec, n, 4, ctx), spec).norm;
    CHECK(d < prev_n);
    prev_n = d;
  }
  CHECK_THROWS(residual_norm(s1, spec, 11));
}

TEST_CASE("parallel and serial residual quadrature agree") {
  const PrecisionContext ctx(80);
  PrecisionScope scope(ctx);
  const ProblemSpec spec = example1_problem();
  const FDSolution sol = solve(spec, 3, 6, ctx);
  const ResidualResult a = residual_norm(sol, spec, {}, true);
  const ResidualResult b = residual_norm(sol, spec, {}, false);
  CHECK(a.norm == b.norm);
  CHECK(a.panels == b.panels);
}

TEST_CASE("l2 norm of the base term") {
  const PrecisionContext ctx(80);
  PrecisionScope scope(ctx);
  const FDSolution sol = solve(example1_problem(), 4, 0, ctx);
  CHECK(mp::abs(l2_norm(sol.eigenfunction(0), Real(5)).norm - 1) <= test::ten_pow(-70));
}

TEST_CASE("sine and cosine moments") {
  PrecisionScope scope(PrecisionContext(80));
  for (const Real X : {Real(1), Real(5)}) {
    for (int l = 0; l <= 6; ++l) {
      for (int m = -4; m <= 4; ++m) {
        const Real w = fdsl::pi() * m / X;
        const Real c = test::quad([&](const Real& x) { return mp::pow(x, l) * mp::cos(w * x); }, X, 1e-60);
        const Real s = test::quad([&](const Real& x) { return mp::pow(x, l) * mp::sin(w * x); }, X, 1e-60);
        CAPTURE(l);
        CAPTURE(m);
        CHECK(mp::abs(cos_moment(l, m, X) - c) <= test::ten_pow(-55) * std::max(Real(1), mp::abs(c)));
        CHECK(mp::abs(sin_moment(l, m, X) - s) <= test::ten_pow(-55) * std::max(Real(1), mp::abs(s)));
      }
    }
  }
}

TEST_CASE("galerkin matrix of the unperturbed operator is diagonal") {
  PrecisionScope scope(PrecisionContext(60));
  const ProblemSpec spec("zero", Real(2), Polynomial(), Polynomial(), Polynomial());
  const GalerkinOracle g = galerkin_assemble(spec, 20);
  for (int q = 0; q < 20; ++q) {
    for (int p = 0; p < 20; ++p) {
      const Real want = p == q ? mp::pow(fdsl::pi() * (p + 1) / 2, 4) : Real(0);
      CHECK(mp::abs(g.at(q, p) - want) <= test::ten_pow(-50) * std::max(Real(1), want));
    }
  }
  const Real l2 = galerkin_nearest_eigenvalue(spec, Real(90), 20);
  CHECK(test::rel_diff(l2, mp::pow(fdsl::pi(), 4)) <= test::ten_pow(-50));
}

TEST_CASE("galerkin matrix entries against quadrature") {
  PrecisionScope scope(PrecisionContext(80));
  std::mt19937 rng(3);
  const ProblemSpec spec = test::random_problem(rng, 0.3);
  const GalerkinOracle g = galerkin_assemble_serial(spec, 20);
  for (const auto& [q, p] : std::vector<std::pair<int, int>>{{0, 0}, {2, 5}, {7, 3}, {19, 18}}) {
    const Real kp = fdsl::pi() * (p + 1) / spec.X, kq = fdsl::pi() * (q + 1) / spec.X;
    auto f = [&](const Real& x) {
      const Real s = mp::sin(kp * x);
      const Real op = -kp * kp * poly_eval(spec.q2, x) * s + kp * poly_eval(spec.q1, x) * mp::cos(kp * x) +
                      poly_eval(spec.q0, x) * s;
      return op * mp::sin(kq * x);
    };
    Real want = 2 / spec.X * test::quad(f, spec.X, 1e-60);
    if (p == q) want += mp::pow(kp, 4);
    CHECK(mp::abs(g.at(q, p) - want) <= test::ten_pow(-55) * std::max(Real(1), mp::abs(want)));
  }
}

TEST_CASE("parallel and serial galerkin assembly agree") {
  PrecisionScope scope(PrecisionContext(60));
  const GalerkinOracle a = galerkin_assemble(example1_problem(), 40);
  const GalerkinOracle b = galerkin_assemble_serial(example1_problem(), 40);
  CHECK(a.A == b.A);
}

TEST_CASE("galerkin eigenvalues agree with the FD method") {
  PrecisionScope scope(PrecisionContext(60));
  for (const ProblemSpec& spec : {example2_problem(), example1_problem()}) {
    for (int n : {1, 3}) {
      const FDSolution sol = solve(spec, n, 20, PrecisionContext(150));
      const Real g200 = galerkin_nearest_eigenvalue(spec, sol.lambda_approx, 200);
      CAPTURE(spec.name);
      CAPTURE(n);
      CHECK(agreeing_digits(g200, sol.lambda_approx, 60) >= 8);
      const Real g100 = galerkin_nearest_eigenvalue(spec, sol.lambda_approx, 100);
      CHECK(test::rel_diff(g100, g200) < Real(1e-8));
    }
  }
  CHECK_THROWS_AS(galerkin_nearest_eigenvalue(example2_problem(), Real(100), 19), std::invalid_argument);
}

TEST_CASE("inverse iteration reports non-convergence") {
  PrecisionScope scope(PrecisionContext(60));
  GalerkinOracle g;
  g.N = 2;
  g.X = Real(1);
  // Rotation: eigenvalues +-i, no real eigenvector to converge to.
  g.A = {Real(0), Real(-1), Real(1), Real(0)};
  CHECK_THROWS_AS(inverse_iteration(g, Real(0), 30), OracleError);
  GalerkinOracle d;
  d.N = 2;
  d.X = Real(1);
  d.A = {Real(1), Real(0), Real(0), Real(5)};
  const OracleResult r = inverse_iteration(d, Real("4.5"));
  CHECK(mp::abs(r.eigenvalue - 5) <= test::ten_pow(-25));
}

TEST_CASE("half-precision replay exposes cancellation at low working precision") {
  const ProblemSpec spec = example1_problem();
  auto lam = [&] { return solve(spec, 1, 20, PrecisionContext(current_digits())).lambda_approx; };
  CHECK(stability_probe(lam, PrecisionContext(60), PrecisionContext(30)) < 10);
  CHECK(stability_probe(lam, PrecisionContext(300), PrecisionContext(150)) >= 60);
}

TEST_CASE("fixture comparisons") {
  const PrecisionContext ctx(120);
  PrecisionScope scope(ctx);
  const FDSolution s2 = solve(example2_problem(), 1, 10, ctx);
  const FixtureComparison c2 = compare_to_fixture(s2, "ex2", builtin_fixtures(), Real("2.8e-39"));
  CHECK(c2.found);
  REQUIRE(c2.lambda_digits.has_value());
  CHECK(*c2.lambda_digits >= 50);
  REQUIRE(c2.residual_ratio.has_value());
  CHECK(*c2.residual_ratio == doctest::Approx(1.0));

  const FDSolution s1 = solve(example1_problem(), 3, 20, ctx);
  const FixtureComparison c1 = compare_to_fixture(s1, "ex1");
  CHECK(c1.found);
  REQUIRE(c1.error_ratio.has_value());
  CHECK(within_factor(*c1.error_ratio, 2));
  CHECK(*c1.fixture_error == doctest::Approx(2.4e-28));

  CHECK_FALSE(compare_to_fixture(solve(example2_problem(), 40, 2, ctx), "ex2").found);
  CHECK_THROWS_AS(compare_to_fixture(s2, "ex3"), std::invalid_argument);
  CHECK(within_factor(0.6, 2));
  CHECK_FALSE(within_factor(0.4, 2));
  CHECK_FALSE(within_factor(2.1, 2));
}

TEST_CASE("shipped fixture file matches the compiled copy") {
  std::ifstream in(std::string(FDSL_DATA_DIR) + "/fixtures.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  const FixtureSet a = parse_fixtures(ss.str());
  const FixtureSet& b = builtin_fixtures();
  CHECK(a.ex1_exact == b.ex1_exact);
  CHECK(a.ex2_residual == b.ex2_residual);
  CHECK(b.ex1_exact.size() == 8);
  CHECK(b.ex1_error.size() == 24);
  CHECK(b.ex2_residual.size() == 80);
}
