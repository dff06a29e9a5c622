#include "cslrot/commands.hpp"
#include "cslrot/config.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace cslrot;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("cslrot_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("cslrot_cfg_" + name + ".json");
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CSLROT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kRod = R"("body": {"shape": "cylinder", "length": "100nm", "radius": "5nm", "material": "silicon"})";

}  // namespace

TEST_CASE("unit suffixes") {
  CHECK(parse_length("12nm") == doctest::Approx(12e-9));
  CHECK(parse_length("3.5um") == doctest::Approx(3.5e-6));
  CHECK(parse_length("1e-7") == 1e-7);
  CHECK(parse_length("2m") == 2.0);
  CHECK(parse_mass("amu") == kConstants.amu);
  CHECK(parse_mass("amu:28") == doctest::Approx(28 * kConstants.amu));
  CHECK(parse_scalar("0.02pi") == doctest::Approx(0.02 * std::numbers::pi));
  CHECK(parse_scalar("90deg") == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(parse_length("12 parsecs"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mass("amu:"), std::invalid_argument);
}

TEST_CASE("schema: bodies, sections and unknown keys") {
  const auto cfg = parse_config(std::string("{") + kRod + R"(, "csl": {"lambda_c": 1e-8, "m0": "amu:2"},
      "diffusion": {"r_c": {"min": "1nm", "max": "1um", "n": 4}}})");
  REQUIRE(cfg.body);
  CHECK(cfg.body->shape_name() == "cylinder");
  CHECK(cfg.csl.m0 == doctest::Approx(2 * kConstants.amu));
  REQUIRE(cfg.diffusion);
  CHECK(cfg.diffusion->r_c.size() == 4);
  CHECK(cfg.diffusion->r_c.back() == 1e-6);

  try {
    parse_config(R"({"body": {"shape": "cylinder", "length": 1, "radius": 1, "density": 1, "colour": "red"}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "body.colour");
  }
  try {
    parse_config(R"({"locrate": {"alphas": [0.1, "x"], "r_c": ["1nm"]}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "locrate.alphas[1]");
  }
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"body": {"shape": "cylinder", "length": 1, "radius": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"quadrature": {"rel_tol": 0.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"exclude": {"gamma_cm": 1, "gamma_rot": 1, "rel_error": 1.5}})"), ConfigError);
}

TEST_CASE("config hash follows canonical content, not formatting") {
  const auto a = parse_config(R"({"csl": {"lambda_c": 1e-8, "r_c": "100nm"}})");
  const auto b = parse_config("{ \"csl\" : { \"r_c\" : \"100nm\",\n \"lambda_c\" : 1e-8 } }");
  const auto c = parse_config(R"({"csl": {"lambda_c": 2e-8, "r_c": "100nm"}})");
  CHECK(a.hash == b.hash);
  CHECK(a.hash != c.hash);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("empty sweep is a usage error and writes nothing") {
  const auto out = scratch_dir("empty");
  CHECK_THROWS_AS(parse_config(std::string("{") + kRod + R"(, "csl": {"lambda_c": 1}, "diffusion": {"r_c": []}})"),
                  ConfigError);
  const auto cfg = write_config("empty", std::string("{") + kRod + R"(, "csl": {"lambda_c": 1}, "diffusion": {"r_c": []}})");
  CHECK(run_cli("diffusion --config " + cfg.string() + " --out " + out.string()) == kExitConfig);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("missing section is a config error") {
  const auto cfg = parse_config(std::string("{") + kRod + "}");
  CHECK_THROWS_AS(run_command("diffusion", cfg, {scratch_dir("missing"), false, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(run_command("dance", cfg, {scratch_dir("missing"), false, std::nullopt}), ConfigError);
}

TEST_CASE("outputs are byte-identical across runs and carry provenance") {
  const auto cfg = parse_config(std::string("{") + kRod + R"(, "csl": {"lambda_c": 1e-8},
      "diffusion": {"r_c": ["10nm", "100nm", "1um"]}})");
  const auto d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  const auto r1 = run_command("diffusion", cfg, {d1, false, std::nullopt});
  run_command("diffusion", cfg, {d2, false, std::nullopt});
  const auto a = slurp(d1 / "diffusion.csv"), b = slurp(d2 / "diffusion.csv");
  CHECK(a == b);
  CHECK(a.find("# cslrot_version = ") == 0);
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash));
  CHECK(a.find(std::string("# config_fnv1a64 = ") + hash) != std::string::npos);
  CHECK(a.find("# quadrature.rel_tol = ") != std::string::npos);
  CHECK(a.find("\nr_c_m,d_par,d_perp,d_rot\n") != std::string::npos);
  CHECK(r1.files.size() == 1);
}

TEST_CASE("--check runs the oracle comparison") {
  const auto cfg = parse_config(std::string("{") + kRod + R"(, "csl": {"lambda_c": 1e-8},
      "diffusion": {"r_c": ["30nm", "300nm"]}})");
  CommandOptions opt{scratch_dir("check"), true, std::nullopt};
  const auto res = run_command("diffusion", cfg, opt);
  REQUIRE(res.check);
  CHECK(res.check->passed());
  CHECK(res.check->max_deviation < 1e-7);
  CHECK(check_tolerance(1e-10) == 1e-6);
  CHECK(check_tolerance(1e-6) == doctest::Approx(1e-4));
}

TEST_CASE("planar command writes snapshots, marginals and variance") {
  const auto cfg = parse_config(R"({"planar": {"sigma_alpha": 0.3, "d_rot": 50, "inertia": 1e-30,
      "times": [0, "0.01pi", 0.05], "n_alpha": 64, "m_max": 40}})");
  const auto out = scratch_dir("planar");
  const auto res = run_command("planar", cfg, {out, true, std::nullopt});
  CHECK(res.files.size() == 6);
  for (const char* f : {"snapshot_000.csv", "snapshot_001.csv", "snapshot_002.csv", "p_alpha.csv", "p_m.csv", "variance.csv"})
    CHECK(fs::exists(out / f));
  CHECK(slurp(out / "p_m.csv").find("\nm,p_t0,p_t1,p_t2\n") != std::string::npos);
  REQUIRE(res.check);
  CHECK(res.check->passed());
}

TEST_CASE("exit codes") {
  const auto out = scratch_dir("exit");
  const auto good = write_config("good", std::string("{") + kRod + R"(, "csl": {"lambda_c": 1e-8},
      "diffusion": {"r_c": ["100nm"]}})");
  CHECK(run_cli("diffusion --config " + good.string() + " --out " + out.string() + " --check") == kExitOk);
  CHECK(run_cli("diffusion --out " + out.string()) == kExitConfig);
  CHECK(run_cli("frobnicate --config " + good.string()) == kExitConfig);
  CHECK(run_cli("diffusion --config " + good.string() + " --tol 0.5") == kExitConfig);
  const auto unknown = write_config("unknown", std::string("{") + kRod + R"(, "speed": 3})");
  CHECK(run_cli("diffusion --config " + unknown.string() + " --out " + out.string()) == kExitConfig);

  const auto starved = write_config("starved", R"({"body": {"shape": "spheroid", "length": "100nm", "radius": "5nm",
      "material": "silicon"}, "csl": {"lambda_c": 1e-8}, "quadrature": {"max_evals": 1000},
      "diffusion": {"r_c": ["100nm"]}})");
  CHECK(run_cli("diffusion --config " + starved.string() + " --out " + out.string()) == kExitConvergence);
}

TEST_CASE("example configurations parse") {
  for (const auto& e : fs::directory_iterator(CSLROT_CONFIGS)) {
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_config(e.path().string()));
  }
}
