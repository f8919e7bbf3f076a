#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "osc/nim.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch()
{
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("oscnim_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Result
{
  int code;
  std::string err;
};

Result run(const std::string& args, const std::string& env = "")
{
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + " " + OSCNIM_BIN + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr)
{
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

fs::path write(const std::string& name, const std::string& text)
{
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// Small grid keeps the synthesis runs short.
fs::path small_config()
{
  return write("small.json", R"({"grid": {"t_count": 8, "x_count": 9, "x_min": -3, "x_max": 3}, "M": 60})");
}

}  // namespace

TEST_CASE("verify: exit codes")
{
  const std::string cfg = std::string(OSC_SOURCE_DIR) + "/config/default.json";
  CHECK(run("verify --config " + cfg + " --suite algebra --out " + (scratch() / "v1").string()).code == 0);
  CHECK(fs::exists(scratch() / "v1" / "report.json"));

  const fs::path n2 = write("n2.json", R"({"N": 2})");
  const Result r = run("verify --config " + n2.string() + " --suite lambda --out " + (scratch() / "v2").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("protected window") != std::string::npos);

  const Result u = run("verify --suite nonsense --out " + (scratch() / "v3").string());
  CHECK(u.code == 2);
  CHECK(u.err.find("algebra, group, lambda, kernels, oscillator, nim") != std::string::npos);

  CHECK(run("verify --config " + write("bad.json", "{\"M\": 3}").string()).code == 2);
  CHECK(run("verify --config " + (scratch() / "missing.json").string()).code == 2);
}

TEST_CASE("verify: full run lists at least 25 checks and passes")
{
  const fs::path out = scratch() / "full";
  CHECK(run("verify --out " + out.string()).code == 0);
  const auto j = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(j["pass"].get<bool>());
  CHECK(j["check_count"].get<int>() >= 25);
  bool all = true;
  for (const auto& s : j["suites"])
    for (const auto& c : s["checks"]) all = all && c["pass"].get<bool>();
  CHECK(all == j["pass"].get<bool>());
}

TEST_CASE("spectrum table")
{
  const fs::path out = scratch() / "spec";
  CHECK(run("spectrum --nmax 5 --out " + out.string()).code == 0);
  std::string header;
  const auto rows = read_csv(out / "spectrum.csv", &header);
  CHECK(header == "n,E_n,E_n_over_hbar_omega");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][2] == 0.5);
  CHECK(rows[5][2] == 5.5);
  for (const auto& r : rows) CHECK(r[1] - (r[0] + 0.5) == 0.0);
  CHECK(run("spectrum --nmax 41 --out " + out.string()).code == 2);

  // Byte-identical output for identical config.
  const std::string first = slurp(out / "spectrum.csv");
  CHECK(run("spectrum --nmax 5 --out " + out.string()).code == 0);
  CHECK(slurp(out / "spectrum.csv") == first);
}

TEST_CASE("kernel grid and path residual")
{
  const fs::path out = scratch() / "kern";
  CHECK(run("kernel --u 0,0 --out " + out.string()).code == 0);
  const auto rows = read_csv(out / "kernel.csv");
  CHECK(rows.size() == 16 * 25);
  const osc::qho::PhysParams p;
  double worst = 0.0;
  for (const auto& r : rows) {
    const osc::cdouble expected = 1.0 / (2 * osc::kPi) * osc::qho::psi_n(0, r[0], r[1], p);
    worst = std::max(worst, std::abs(osc::cdouble(r[2], r[3]) - expected));
  }
  CHECK(worst < 1e-15);

  CHECK(run("kernel --u 0.5,-1.2 --path both --out " + out.string()).code == 0);
  double res = 0.0;
  for (const auto& r : read_csv(out / "kernel_path_residual.csv")) res = std::max(res, r[2]);
  CHECK(res <= 1e-9);
  CHECK(run("kernel --u abc --out " + out.string()).code == 2);
  CHECK(run("kernel --path sideways --out " + out.string()).code == 2);
}

TEST_CASE("synthesize")
{
  const std::string cfg = "--config " + small_config().string();
  const fs::path out = scratch() / "syn";

  CHECK(run("synthesize " + write("e.txt", "").string() + " " + cfg + " --out " + out.string()).code == 2);
  const Result bad = run("synthesize " + write("b.txt", "1,0\n0.5,x\n").string() + " " + cfg + " --out " + out.string());
  CHECK(bad.code == 2);
  CHECK(bad.err.find("b.txt:2") != std::string::npos);
  std::string many;
  for (int i = 0; i < 42; ++i) many += "1,0\n";
  CHECK(run("synthesize " + write("m.txt", many).string() + " " + cfg + " --out " + out.string()).code == 2);

  CHECK(run("synthesize " + write("c0.txt", "1,0\n").string() + " " + cfg + " --out " + out.string()).code == 0);
  const auto rows = read_csv(out / "synthesis.csv");
  REQUIRE(rows.size() == 8 * 9);
  const osc::qho::PhysParams p;
  const osc::cdouble ratio = osc::cdouble(rows[3][2], rows[3][3]) / osc::qho::psi_n(0, rows[3][0], rows[3][1], p);
  double spread = 0.0;
  for (const auto& r : rows) {
    const osc::cdouble v(r[2], r[3]);
    spread = std::max(spread, std::abs(v - ratio * osc::qho::psi_n(0, r[0], r[1], p)));
  }
  CHECK(spread < 1e-12);

  CHECK(run("synthesize " + write("c1.txt", "# first excited\n0,0\n1,0\n").string() + " " + cfg + " --out " +
            out.string())
            .code == 0);
  const auto j = nlohmann::json::parse(slurp(out / "synthesis_report.json"));
  for (const auto& c : j["suites"][0]["checks"]) {
    CHECK(c["pass"].get<bool>());
    CHECK(c["measured"].get<double>() <= 1e-6);
  }
}

TEST_CASE("config from the environment")
{
  const fs::path env_cfg = write("env.json", R"({"N": 6})");
  const fs::path out = scratch() / "env";
  CHECK(run("spectrum --nmax 7 --out " + out.string(), "OSCNIM_CONFIG=" + env_cfg.string()).code == 2);
  CHECK(run("spectrum --nmax 6 --out " + out.string(), "OSCNIM_CONFIG=" + env_cfg.string()).code == 0);
}
