#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "osc/check.hpp"
#include "osc/oscillator.hpp"

namespace osc::verify {

/// Invalid configuration or precondition; maps to exit code 2.
struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  qho::PhysParams phys;
  /// Truncation degree of the Fock basis.
  int N = 40;
  /// Gauss-Hermite points per axis.
  int M = 80;
  qho::GridSpec grid;
  /// Overrides keyed "suite.check-key".
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  std::uint64_t seed = 20240611;

  void validate() const;
  double tolerance(const std::string& suite, const std::string& key, double fallback) const;
};

/// Parses a JSON document; missing fields keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_json(const RunConfig& config);

struct SuiteReport
{
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const;
};

/// algebra, group, lambda, kernels, oscillator, nim.
const std::vector<std::string>& suite_names();

/// Throws ConfigError for unknown names or violated preconditions.
SuiteReport run_suite(const std::string& name, const RunConfig& config);

/// Runs the named suites concurrently; reports come back ordered by name.
std::vector<SuiteReport> run_suites(std::vector<std::string> names, const RunConfig& config);

std::string report_json(const std::vector<SuiteReport>& reports, const RunConfig& config);

}  // namespace osc::verify
