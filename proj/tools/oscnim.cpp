// oscnim: verification suites and tables for the oscillator group pipeline.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "osc/nim.hpp"
#include "osc/verify.hpp"

namespace fs = std::filesystem;
using osc::cdouble;
using osc::verify::ConfigError;
using osc::verify::RunConfig;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr const char* kConfigEnv = "OSCNIM_CONFIG";

std::string num(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig resolve_config(const std::string& path, const std::string& out)
{
  RunConfig c;
  std::string source = path;
  if (source.empty())
    if (const char* env = std::getenv(kConfigEnv)) source = env;
  if (!source.empty()) c = osc::verify::load_config(source);
  if (!out.empty()) c.output_dir = out;
  c.validate();
  return c;
}

std::ofstream open_output(const RunConfig& c, const std::string& name)
{
  fs::create_directories(c.output_dir);
  const fs::path p = fs::path(c.output_dir) / name;
  std::ofstream f(p);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  return f;
}

cdouble parse_complex(const std::string& text)
{
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw std::invalid_argument("expected 're,im'");
  if (!(in >> im)) {
    if (!in.eof()) throw std::invalid_argument("expected 're,im'");
    im = 0.0;
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing text '" + rest + "'");
  return {re, im};
}

Eigen::VectorXcd read_coefficients(const std::string& path, int N)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient file '" + path + "'");
  std::vector<cdouble> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const cdouble v = parse_complex(line);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite value");
      values.push_back(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (values.empty()) throw ConfigError(path + ": no coefficients");
  if (static_cast<int>(values.size()) > N + 1)
    throw ConfigError(path + ": " + std::to_string(values.size()) + " coefficients exceed N+1 = " +
                      std::to_string(N + 1));
  Eigen::VectorXcd c(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) c(i) = values[i];
  return c;
}

int cmd_verify(const RunConfig& cfg, std::vector<std::string> suites)
{
  if (suites.empty()) suites = osc::verify::suite_names();
  const auto reports = osc::verify::run_suites(suites, cfg);
  bool all = true;
  std::size_t count = 0;
  for (const auto& r : reports) {
    for (const auto& c : r.checks)
      std::printf("%-10s %s  %-70s measured %.3e %s %.1e\n", r.suite.c_str(), c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.expect_above ? ">" : "<=", c.tolerance);
    all = all && r.pass();
    count += r.checks.size();
  }
  auto out = open_output(cfg, "report.json");
  out << osc::verify::report_json(reports, cfg) << "\n";
  std::printf("%zu checks, %s; report in %s\n", count, all ? "all pass" : "FAILURES",
              (fs::path(cfg.output_dir) / "report.json").string().c_str());
  return all ? 0 : kExitFail;
}

int cmd_spectrum(const RunConfig& cfg, int n_max)
{
  if (n_max < 0 || n_max > cfg.N)
    throw ConfigError("--nmax must lie in 0..N (N = " + std::to_string(cfg.N) + ")");
  const auto rule = osc::numerics::gauss_hermite(cfg.M);
  const auto spectrum = osc::nim::stationary_spectrum(n_max, cfg.phys, rule, cfg.N);
  auto out = open_output(cfg, "spectrum.csv");
  out << "n,E_n,E_n_over_hbar_omega\n";
  for (const auto& e : spectrum) out << e.n << "," << num(e.energy) << "," << num(e.level) << "\n";
  return 0;
}

int cmd_kernel(const RunConfig& cfg, const std::string& u_text, const std::string& path)
{
  cdouble u;
  try {
    u = parse_complex(u_text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--u: ") + e.what());
  }
  const bool both = path == "both";
  const auto primary = both ? osc::nim::KernelPath::correspondence : osc::nim::parse_path(path);
  const osc::nim::HStateLabel s{u, 0.5};
  const auto& g = cfg.grid;
  auto out = open_output(cfg, "kernel.csv");
  out << "t,x,re,im\n";
  for (int i = 0; i < g.t_count; ++i)
    for (int j = 0; j < g.x_count; ++j) {
      const cdouble k = osc::nim::hstate_kernel(g.t(i), g.x(j), s, cfg.phys, primary);
      out << num(g.t(i)) << "," << num(g.x(j)) << "," << num(k.real()) << "," << num(k.imag()) << "\n";
    }
  if (both) {
    auto res = open_output(cfg, "kernel_path_residual.csv");
    res << "t,x,residual\n";
    double worst = 0.0;
    for (int i = 0; i < g.t_count; ++i)
      for (int j = 0; j < g.x_count; ++j) {
        const cdouble a = osc::nim::hstate_kernel(g.t(i), g.x(j), s, cfg.phys, osc::nim::KernelPath::correspondence);
        const cdouble b = osc::nim::hstate_kernel(g.t(i), g.x(j), s, cfg.phys, osc::nim::KernelPath::cocycle);
        const double r = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
        worst = std::max(worst, r);
        res << num(g.t(i)) << "," << num(g.x(j)) << "," << num(r) << "\n";
      }
    std::printf("max relative path residual %.3e\n", worst);
  }
  return 0;
}

int cmd_synthesize(const RunConfig& cfg, const std::string& coeff_file)
{
  const Eigen::VectorXcd phi = read_coefficients(coeff_file, cfg.N);
  const auto rule = osc::numerics::gauss_hermite(cfg.M);
  const auto& g = cfg.grid;
  const auto& p = cfg.phys;
  auto field = [&](double t, double x) { return osc::nim::synthesize(phi, t, x, p, rule).value; };

  auto out = open_output(cfg, "synthesis.csv");
  out << "t,x,re,im\n";
  for (int i = 0; i < g.t_count; ++i)
    for (int j = 0; j < g.x_count; ++j) {
      const cdouble v = field(g.t(i), g.x(j));
      out << num(g.t(i)) << "," << num(g.x(j)) << "," << num(v.real()) << "," << num(v.imag()) << "\n";
    }

  const double residual = osc::nim::schrodinger_residual_patches(field, g, p);
  const double sx = p.m * p.omega / p.hbar;
  const double t0 = g.t(0);
  const double psi2 = osc::numerics::integrate_line(
                          [&](double x) { return cdouble(std::norm(field(t0, x)) * std::exp(sx * x * x)); }, sx, rule)
                          .real();
  const double q2 = p.omega / (2.0 * osc::kPi) * osc::nim::u_space_norm_squared(phi, p, rule);
  const double norm_gap = std::abs(psi2 - q2) / std::max(std::abs(psi2), std::abs(q2));

  osc::verify::SuiteReport report{"synthesize", {}, {}};
  report.checks.push_back(osc::make_check("Schrodinger residual of the synthesized field", residual,
                                          cfg.tolerance("synthesize", "residual", 1e-6)));
  report.checks.push_back(osc::make_check("norm identity ||psi||^2 = (omega/2pi) ||phi||_Q^2", norm_gap,
                                          cfg.tolerance("synthesize", "norm_identity", 1e-6)));
  report.notes.push_back("coefficients: " + std::to_string(phi.size()) + " from " + coeff_file);
  for (const auto& c : report.checks)
    std::printf("%s  %-60s measured %.3e <= %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                c.tolerance);
  auto rep = open_output(cfg, "synthesis_report.json");
  rep << osc::verify::report_json({report}, cfg) << "\n";
  return report.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"oscnim: oscillator-group verification and tables"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  app.add_option("--config", config_path, std::string("JSON config (default: $") + kConfigEnv + " or built-in)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");

  auto* verify = app.add_subcommand("verify", "run verification suites and write report.json");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suite name (repeatable)");

  auto* spectrum = app.add_subcommand("spectrum", "write spectrum.csv");
  int n_max = 10;
  spectrum->add_option("--nmax", n_max, "largest level index");

  auto* kernel = app.add_subcommand("kernel", "write kernel.csv over the grid");
  std::string u_text = "0,0", path = "correspondence";
  kernel->add_option("--u", u_text, "H-state label RE,IM");
  kernel->add_option("--path", path, "evaluation path")->check(CLI::IsMember({"correspondence", "cocycle", "both"}));

  auto* synth = app.add_subcommand("synthesize", "synthesize psi(t,x) from coefficients over chi_n");
  std::string coeff_file;
  synth->add_option("coefficients", coeff_file, "file with one 're,im' per line")->required();

  for (auto* sub : {verify, spectrum, kernel, synth}) {
    sub->add_option("--config", config_path, "JSON config");
    sub->add_option("--out", out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const RunConfig cfg = resolve_config(config_path, out_dir);
    if (*verify) return cmd_verify(cfg, suites);
    if (*spectrum) return cmd_spectrum(cfg, n_max);
    if (*kernel) return cmd_kernel(cfg, u_text, path);
    if (*synth) return cmd_synthesize(cfg, coeff_file);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
