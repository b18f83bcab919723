#include "commands.hpp"

#include "fdsl/convergence.hpp"
#include "fdsl/galerkin.hpp"
#include "fdsl/spectral.hpp"
#include "fdsl/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace fdsl::cli {

namespace {

struct RunConfig {
  std::string problem;
  std::vector<int> ns{1};
  int m = 10;
  int digits = kDefaultDigits;
  int print_digits = 50;
  std::string output;
  std::string json;
  int m_max = 10;
  std::string omega;
  int oracle_n = 0;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& cfg) {
  if (cfg.digits < kMinDigits) throw UsageError("--digits must be >= " + std::to_string(kMinDigits));
  if (cfg.m < 0) throw UsageError("--m must be >= 0");
  if (cfg.print_digits < 1) throw UsageError("--print-digits must be >= 1");
  if (cfg.ns.empty()) throw UsageError("--n needs at least one index");
  for (int n : cfg.ns) {
    if (n < 1) throw UsageError("--n entries must be >= 1");
  }
}

// Writes to --output when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::optional<Real> fixture_exact(const ProblemSpec& spec, int n) {
  if (spec.fixture != "ex1") return std::nullopt;
  const auto& tab = builtin_fixtures().ex1_exact;
  auto it = tab.find(n);
  if (it == tab.end()) return std::nullopt;
  return parse_real(it->second);
}

int cmd_solve(const RunConfig& cfg, const ProblemSpec& spec, const PrecisionContext& ctx, std::ostream& out) {
  const auto sols = solve_batch(spec, cfg.ns, cfg.m, ctx);
  Sink sink(cfg.output, out);
  for (const auto& sol : sols) {
    *sink << "n = " << sol.n << "  m = " << sol.m << "\n";
    *sink << "  lambda0 = " << to_decimal(sol.lambda0, cfg.print_digits) << "\n";
    *sink << "  lambda  = " << to_decimal(sol.lambda_approx, cfg.print_digits) << "\n";
    if (ctx.digits / 2 >= kMinDigits) {
      const PrecisionContext half(ctx.digits / 2);
      const int stable = stability_probe(
          [&] { return solve(spec, sol.n, cfg.m, PrecisionContext(current_digits())).lambda_approx; }, ctx, half);
      *sink << "  stable digits (replay at " << half.digits << ") = " << stable << "\n";
    }
    if (spec.q0.is_zero() && spec.q1.is_zero() && spec.q2.is_zero()) {
      *sink << "  all corrections vanish (zero potentials)\n";
    }
    if (!spec.fixture.empty()) {
      const FixtureComparison cmp = compare_to_fixture(sol, spec.fixture);
      if (cmp.abs_error) *sink << "  |fixture - lambda| = " << to_scientific(*cmp.abs_error, 3) << "\n";
      if (cmp.lambda_digits) *sink << "  digits matching fixture = " << *cmp.lambda_digits << "\n";
    }
  }
  if (!cfg.json.empty()) {
    std::ofstream js(cfg.json);
    if (!js) throw std::runtime_error("cannot open JSON file " + cfg.json);
    if (sols.size() == 1) {
      js << to_json(sols.front(), cfg.print_digits) << "\n";
    } else {
      js << "[\n";
      for (std::size_t i = 0; i < sols.size(); ++i) {
        js << to_json(sols[i], cfg.print_digits) << (i + 1 < sols.size() ? ",\n" : "\n");
      }
      js << "]\n";
    }
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const ProblemSpec& spec, const PrecisionContext& ctx, std::ostream& out) {
  if (cfg.m_max < 1) throw UsageError("--m-max must be >= 1");
  Sink sink(cfg.output, out);
  const bool many = cfg.ns.size() > 1;
  *sink << (many ? "n," : "") << "m,lambda,residual,flagged,bound,abs_error\n";
  const auto sols = solve_batch(spec, cfg.ns, cfg.m_max, ctx);
  for (const auto& sol : sols) {
    const ConvergenceReport rep = convergence_report(spec, sol.n);
    const auto exact = fixture_exact(spec, sol.n);
    for (int m = 0; m <= cfg.m_max; ++m) {
      const ResidualResult res = residual_norm(sol, spec, m);
      const ErrorBounds eb = error_bounds(rep, m);
      const Real lam = sol.lambda_at_rank(m);
      if (many) *sink << sol.n << ",";
      *sink << m << "," << to_decimal(lam, cfg.print_digits) << "," << to_scientific(res.norm, 6) << ","
            << (res.flagged ? 1 : 0) << "," << (eb.applicable ? to_scientific(eb.lambda_bound, 6) : "") << ","
            << (exact ? to_scientific(boost::multiprecision::abs(*exact - lam), 6) : "") << "\n";
    }
  }
  return 0;
}

int cmd_check(const RunConfig& cfg, const ProblemSpec& spec, std::ostream& out) {
  std::optional<Real> omega_override;
  if (!cfg.omega.empty()) omega_override = parse_real(cfg.omega);
  Sink sink(cfg.output, out);
  for (int n : cfg.ns) {
    const ConvergenceReport rep = convergence_report(spec, n, omega_override);
    *sink << "n = " << n << "\n";
    *sink << "  omega = " << to_scientific(rep.omega, 10) << (omega_override || spec.stated_omega ? " (given)" : "") << "\n";
    *sink << "  M_n   = " << to_scientific(rep.M_n, 10) << "\n";
    *sink << "  r_n   = " << to_scientific(rep.r_n, 10) << "\n";
    if (rep.converges) {
      *sink << "  sufficient condition met (r_n < 1)\n";
      const ErrorBounds eb = error_bounds(rep, cfg.m);
      if (eb.applicable) {
        *sink << "  bound |lambda - lambda^" << cfg.m << "| <= " << to_scientific(eb.lambda_bound, 6) << "\n";
        *sink << "  bound ||u - u^" << cfg.m << "||       <= " << to_scientific(eb.u_bound, 6) << "\n";
      } else {
        *sink << "  bounds not applicable: " << eb.reason << "\n";
      }
    } else {
      *sink << "  sufficient condition not met (r_n >= 1); the method may still converge\n";
    }
  }
  return 0;
}

int cmd_oracle(const RunConfig& cfg, const ProblemSpec& spec, const PrecisionContext& ctx, std::ostream& out,
               std::ostream& err) {
  if (cfg.oracle_n < 20) throw UsageError("--oracle-n must be >= 20");
  const auto sols = solve_batch(spec, cfg.ns, cfg.m, ctx);
  const GalerkinOracle g = galerkin_assemble(spec, cfg.oracle_n);
  Sink sink(cfg.output, out);
  *sink << "n,fd_lambda,oracle_lambda,digits,iterations,fixture_digits\n";
  int failures = 0;
  for (const auto& sol : sols) {
    const auto exact = fixture_exact(spec, sol.n);
    try {
      const OracleResult r = inverse_iteration(g, exact ? *exact : sol.lambda_approx);
      *sink << sol.n << "," << to_decimal(sol.lambda_approx, cfg.print_digits) << ","
            << to_decimal(r.eigenvalue, cfg.print_digits) << "," << agreeing_digits(r.eigenvalue, sol.lambda_approx, 60)
            << "," << r.iterations << ",";
      if (exact) *sink << agreeing_digits(r.eigenvalue, *exact, 60);
      *sink << "\n";
    } catch (const OracleError& e) {
      ++failures;
      err << "n = " << sol.n << ": " << e.what() << "\n";
      *sink << sol.n << "," << to_decimal(sol.lambda_approx, cfg.print_digits) << ",,,,\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--problem", cfg.problem, "problem config file")->required()->check(CLI::ExistingFile);
  sub->add_option("--n", cfg.ns, "eigenvalue indices")->delimiter(',');
  sub->add_option("--digits", cfg.digits, "working precision in decimal digits");
  sub->add_option("--print-digits", cfg.print_digits, "significant digits of printed eigenvalues");
  sub->add_option("--output", cfg.output, "write results to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FD-method eigenvalue solver for fourth-order Sturm-Liouville problems", "fdsl"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve_cmd = app.add_subcommand("solve", "rank-m eigenvalue approximations");
  add_common(solve_cmd, cfg);
  solve_cmd->add_option("--m", cfg.m, "rank");
  solve_cmd->add_option("--json", cfg.json, "export the solutions as JSON to this file");

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of eigenvalue, residual and bound for ranks 0..m-max");
  add_common(sweep_cmd, cfg);
  sweep_cmd->add_option("--m-max", cfg.m_max, "largest rank");

  auto* check_cmd = app.add_subcommand("check", "convergence constants and a-priori bounds");
  add_common(check_cmd, cfg);
  check_cmd->add_option("--m", cfg.m, "rank used for the bounds");
  check_cmd->add_option("--omega", cfg.omega, "use this potential size instead of the computed one");

  auto* oracle_cmd = app.add_subcommand("oracle", "compare with a sine-Galerkin discretisation");
  add_common(oracle_cmd, cfg);
  oracle_cmd->add_option("--m", cfg.m, "rank");
  oracle_cmd->add_option("--oracle-n", cfg.oracle_n, "Galerkin basis size")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fdsl: " << e.what() << "\n";
    return 2;
  }

  try {
    validate(cfg);
    std::sort(cfg.ns.begin(), cfg.ns.end());
    cfg.ns.erase(std::unique(cfg.ns.begin(), cfg.ns.end()), cfg.ns.end());
    const PrecisionContext ctx(cfg.digits);
    PrecisionScope scope(ctx);
    const ProblemSpec spec = load_problem(cfg.problem);
    if (*solve_cmd) return cmd_solve(cfg, spec, ctx, out);
    if (*sweep_cmd) return cmd_sweep(cfg, spec, ctx, out);
    if (*check_cmd) return cmd_check(cfg, spec, out);
    return cmd_oracle(cfg, spec, ctx, out, err);
  } catch (const ConfigError& e) {
    err << "fdsl: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "fdsl: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "fdsl: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fdsl::cli
