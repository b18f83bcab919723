#include "fdsl/fixtures.hpp"

#include "fdsl/problem.hpp"

#include <sstream>
#include <vector>

namespace fdsl {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_dots(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, '.')) parts.push_back(item);
  return parts;
}

int to_index(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "bad index '" + s + "'");
  }
}

}  // namespace

FixtureSet parse_fixtures(std::string_view text) {
  FixtureSet set;
  std::stringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, "missing value");
    auto parts = split_dots(key);
    bool ok = false;
    if (parts.size() == 3 && parts[0] == "ex1" && parts[1] == "exact") {
      ok = set.ex1_exact.emplace(to_index(parts[2], line_no), value).second;
    } else if (parts.size() == 4) {
      auto nm = std::make_pair(to_index(parts[2], line_no), to_index(parts[3], line_no));
      if (parts[0] == "ex1" && parts[1] == "error") {
        ok = set.ex1_error.emplace(nm, value).second;
      } else if (parts[0] == "ex2" && parts[1] == "lambda") {
        ok = set.ex2_lambda.emplace(nm, value).second;
      } else if (parts[0] == "ex2" && parts[1] == "residual") {
        ok = set.ex2_residual.emplace(nm, value).second;
      } else {
        throw ConfigError(line_no, "unknown fixture key '" + key + "'");
      }
    } else {
      throw ConfigError(line_no, "unknown fixture key '" + key + "'");
    }
    if (!ok) throw ConfigError(line_no, "duplicate fixture key '" + key + "'");
  }
  return set;
}

const FixtureSet& builtin_fixtures() {
  static const FixtureSet set = parse_fixtures(builtin_fixture_text());
  return set;
}

}  // namespace fdsl
