#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "dfnls/config.hpp"
#include "dfnls/harness.hpp"
#include "json.hpp"

using namespace dfnls;
using namespace dfnls::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string payload(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + "\n";
  return out;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dfnls_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* small_limit = R"(
[run]
experiment = limit-study
plot = true
[simulate]
alpha = 1.5
box = 4
T = 0.05
dt = 0.01
[limit]
h_exponents = 2,3,4,5
refinement = 4
)";

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("minimal simulate config fills dt and n") {
  const auto c = parse_config("[run]\nexperiment = simulate\n[simulate]\nalpha = 1.5\np = 3\nh = 0.03125\n");
  CHECK(c.experiment == Experiment::simulate);
  CHECK(c.sim.n == 512);
  CHECK(c.sim.dt > 0.0);
  CHECK(c.sim.dt == doctest::Approx(dynamics::default_dt(to_sim_config(c))));
  CHECK(c.echo.at("simulate.dt") != "0");
  CHECK(c.echo.count("run.seed") == 1);
}

TEST_CASE("constraint violations name the key") {
  const auto e1 = error_of("[run]\nexperiment = simulate\n[simulate]\nalpha = 2.5\n");
  CHECK(e1.find("alpha") != std::string::npos);
  CHECK(e1.find("(1,2)") != std::string::npos);

  const auto e2 = error_of("[run]\nexperiment = limit-study\n[simulate]\nalpha = 1.1\np = 3\nbox = 4\n");
  CHECK(e2.find("8/7") != std::string::npos);
  // The same physics is fine for a plain simulation.
  CHECK(error_of("[run]\nexperiment = simulate\n[simulate]\nalpha = 1.1\np = 3\nbox = 4\n").empty());

  CHECK(error_of("[run]\nexperiment = simulate\n[simulate]\nalpa = 1.5\n").find("simulate.alpa") != std::string::npos);
  CHECK(error_of("[run]\nexperiment = simulate\n[simulation]\n").find("[simulation]") != std::string::npos);
  CHECK(error_of("[run]\nexperiment = simulate\n[simulate]\np = three\n").find("simulate.p") != std::string::npos);
  CHECK(error_of("[run]\nexperiment = dispersion-scan\n[dispersion]\nalphas = 1.5,2.0\n").find("dispersion.alphas") != std::string::npos);
  CHECK(error_of("[run]\nexperiment = dispersion-scan\n[dispersion]\ntau_hi = 100\n").find("dispersion.tau_hi") != std::string::npos);
  CHECK(error_of("[simulate]\nalpha = 1.5\n").find("run.experiment") != std::string::npos);
  CHECK_THROWS_AS(parse_config("[run]\nexperiment = simulate\n", Experiment::manifold_scan), ConfigError);
}

TEST_CASE("overrides are re-validated") {
  auto c = parse_config("[run]\nexperiment = simulate\n");
  c.sim.alpha = 3.0;
  CHECK_THROWS_AS(finalize(c), ConfigError);
}

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("limit study writes errors, fit and plot") {
  auto c = parse_config(small_limit);
  c.out_dir = scratch("limit").string();
  finalize(c);
  const auto m = run(c);
  CHECK(m.failures.empty());
  std::set<std::string> names;
  for (const auto& f : m.files) {
    names.insert(f.name);
    const std::string bytes = slurp(fs::path(c.out_dir) / f.name);
    CHECK(bytes.size() == f.bytes);
    CHECK(sha256_hex(bytes) == f.sha256);
    CHECK(bytes.find("run.seed") != std::string::npos);
  }
  CHECK(names == std::set<std::string>{"errors.csv", "fit.json", "plot.svg"});
  const auto manifest = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "manifest.json"));
  CHECK(manifest["files"].size() == 3);
  CHECK(manifest["version"] == artifact_version());
  CHECK(manifest["config"]["run.seed"] == "1");
  // No orphan outputs.
  std::size_t on_disk = 0;
  for (const auto& e : fs::directory_iterator(c.out_dir)) on_disk += e.path().filename() != "manifest.json";
  CHECK(on_disk == names.size());
  const auto fit = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "fit.json"));
  CHECK(fit["count"] == 4);
  CHECK(fit["predicted_rate"].get<double>() == doctest::Approx(3.0 / 7.0));
}

TEST_CASE("repeated runs give identical numeric payloads") {
  auto c = parse_config(small_limit);
  c.plot = false;
  c.out_dir = scratch("det_a").string();
  finalize(c);
  run(c);
  const std::string a = slurp(fs::path(c.out_dir) / "errors.csv");
  c.out_dir = scratch("det_b").string();
  finalize(c);
  run(c);
  const std::string b = slurp(fs::path(c.out_dir) / "errors.csv");
  CHECK(payload(a) == payload(b));
  CHECK(payload(a).size() > 40);
  CHECK(a != b);  // the echo differs in run.out only
}

TEST_CASE("dispersion scan writes one row per alpha and tau") {
  auto c = parse_config("[run]\nexperiment = dispersion-scan\n[dispersion]\nalphas = 1.5,1.7\nband = S1\n"
                        "tau_lo = 20\ntau_hi = 200\nsamples = 6\ntol = 1e-5\n");
  c.out_dir = scratch("disp").string();
  finalize(c);
  const auto m = run(c);
  CHECK(m.failures.empty());
  std::istringstream in(payload(slurp(fs::path(c.out_dir) / "scan.csv")));
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,N,band,tau,absJ,sigma_fit,C_fit,residual,status");
  std::set<std::string> keys;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream f(line);
    std::string alpha, N, band, tau;
    std::getline(f, alpha, ',');
    std::getline(f, N, ',');
    std::getline(f, band, ',');
    std::getline(f, tau, ',');
    keys.insert(alpha + "|" + N + "|" + tau);
    CHECK(line.substr(line.rfind(',') + 1) == "ok");
  }
  CHECK(rows == 12);
  CHECK(keys.size() == 12);
}

TEST_CASE("manifold scan and asymptotics runs") {
  auto c = parse_config("[run]\nexperiment = manifold-scan\n[manifold]\nalphas = 1.5\ncount = 8\n");
  c.out_dir = scratch("man").string();
  finalize(c);
  auto m = run(c);
  CHECK(m.failures.empty());
  const auto s = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "summary.json"));
  CHECK(s["rows"][0]["max_residual"].get<double>() <= 1e-10);

  c = parse_config("[run]\nexperiment = asymptotics\n[asymptotics]\npoint = k1\ntau_lo = 50\ntau_hi = 500\nsamples = 6\n");
  c.out_dir = scratch("asym").string();
  finalize(c);
  m = run(c);
  CHECK(m.failures.empty());
  CHECK(fs::exists(fs::path(c.out_dir) / "asymptotics.csv"));
}

TEST_CASE("simulate run records observables") {
  auto c = parse_config("[run]\nexperiment = simulate\n[simulate]\nh = 0.125\nbox = 8\nT = 0.1\nstride = 2\n");
  c.out_dir = scratch("sim").string();
  finalize(c);
  const auto m = run(c);
  CHECK(m.failures.empty());
  const auto s = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "summary.json"));
  CHECK(s["max_mass_drift"].get<double>() <= 1e-10);
  CHECK(s["config"]["simulate.n"] == "64");
}

TEST_CASE("selftest passes") {
  std::ostringstream out;
  CHECK(selftest(7, out) == 0);
  CHECK(out.str().find("FAIL") == std::string::npos);
}

}  // TEST_SUITE
