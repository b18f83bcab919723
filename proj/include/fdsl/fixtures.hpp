#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace fdsl {

/// Reference values for the shipped problems, kept as decimal strings
/// exactly as listed. Keys are (n) or (n, m).
struct FixtureSet {
  std::map<int, std::string> ex1_exact;
  std::map<std::pair<int, int>, std::string> ex1_error;
  std::map<std::pair<int, int>, std::string> ex2_lambda;
  std::map<std::pair<int, int>, std::string> ex2_residual;
};

/// Contents of data/fixtures.txt compiled into the library.
const char* builtin_fixture_text();

/// Parses the "ex1.exact.3 = ..." format; throws ConfigError on bad lines.
FixtureSet parse_fixtures(std::string_view text);

/// Parsed builtin set (parsed once).
const FixtureSet& builtin_fixtures();

}  // namespace fdsl
