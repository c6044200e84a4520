#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include <mdwell/config.hpp>
#include <mdwell/figures.hpp>
#include <mdwell/io.hpp>
#include <mdwell/kink.hpp>
#include <mdwell/report.hpp>

#include "test_util.hpp"

using namespace mdwell;
using nlohmann::json;
using testutil::parse_csv;
using testutil::slurp;
using testutil::thrown_kind;

namespace {

std::string tmp_path(const std::string& name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("mdwell_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

// cubic roots for sigma = 0.2, cross-checked against a scan in the kink tests
constexpr double kA1Sigma02 = 1.088033914691;
constexpr double kA2Sigma02 = -0.878885066250;

}  // namespace

TEST_CASE("config defaults") {
  const RunConfig cfg = resolve_config(json::object());
  CHECK(cfg.alpha1 == 1.0);
  CHECK(cfg.alpha2 == -1.5);
  CHECK_FALSE(cfg.sigma.has_value());
  CHECK(cfg.beta == -2.5 / kSqrt2);
  CHECK(cfg.gamma == -0.5);
  CHECK(cfg.epsilon == 0.1);
  CHECK(cfg.epsilon0 == 0.0);
  CHECK(cfg.amplitude == 1.0);
  CHECK(cfg.lambda == 10.0);
  CHECK(cfg.convention == Convention::PaperFigure);
  CHECK(cfg.xi_min == -8.0);
  CHECK(cfg.xi_max == 8.0);
  CHECK(cfg.n == 4001);
  // the default pair and the default (beta, gamma) describe the same kink
  const KinkParams kp = kink_params(cfg.alpha1, cfg.alpha2);
  CHECK(kp.beta == Catch::Approx(cfg.beta).margin(1e-15));
  CHECK(kp.gamma == Catch::Approx(cfg.gamma).margin(1e-15));
}

TEST_CASE("sigma drives the parameter chain") {
  const RunConfig cfg = resolve_config(json{{"sigma", 0.2}});
  REQUIRE(cfg.sigma.has_value());
  CHECK(cfg.alpha1 == Catch::Approx(kA1Sigma02).margin(1e-9));
  CHECK(cfg.alpha2 == Catch::Approx(kA2Sigma02).margin(1e-9));
  CHECK(cfg.beta == Catch::Approx((kA2Sigma02 - kA1Sigma02) / kSqrt2).margin(1e-9));
  CHECK(cfg.gamma == Catch::Approx(kA1Sigma02 + kA2Sigma02).margin(1e-9));

  CHECK_NOTHROW(resolve_config(json{{"sigma", 0.2}, {"alpha1", kA1Sigma02}}));
  CHECK(thrown_kind([] { resolve_config(json{{"sigma", 0.2}, {"alpha1", 1.2}}); }) ==
        "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"sigma", 0.5}}); }) == "config-invalid");
}

TEST_CASE("explicit parameters and consistency") {
  // explicit (beta, gamma) back-derive the roots so the echo stays closed
  const RunConfig cfg = resolve_config(json{{"beta", -1.0}, {"gamma", 0.25}});
  CHECK(cfg.alpha1 == Catch::Approx(0.5 * (0.25 + kSqrt2)).margin(1e-12));
  CHECK(cfg.alpha2 == Catch::Approx(0.5 * (0.25 - kSqrt2)).margin(1e-12));
  const KinkParams kp = kink_params(cfg.alpha1, cfg.alpha2);
  CHECK(kp.beta == Catch::Approx(-1.0).margin(1e-12));
  CHECK(kp.gamma == Catch::Approx(0.25).margin(1e-12));

  const RunConfig two = resolve_config(json{{"alpha1", 2.0}, {"alpha2", -1.0}});
  CHECK(two.beta == Catch::Approx(-3.0 / kSqrt2).margin(1e-12));
  CHECK(two.gamma == Catch::Approx(1.0).margin(1e-12));

  CHECK(thrown_kind([] {
          resolve_config(json{{"alpha1", 1.0}, {"alpha2", -1.5}, {"beta", -1.0}});
        }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"alpha1", 1.0}, {"alpha2", 1.0}}); }) ==
        "config-invalid");
}

TEST_CASE("config rejection") {
  CHECK(thrown_kind([] { resolve_config(json{{"betta", 1.0}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"n", 2000.5}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"n", "many"}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"beta", "x"}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"convention", "sideways"}}); }) ==
        "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"convention", 3}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"xi_min", 2.0}, {"xi_max", -2.0}}); }) ==
        "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"n", 5}}); }) == "config-invalid");
  CHECK(thrown_kind([] { resolve_config(json{{"beta", 0.0}}); }) == "config-invalid");
  CHECK_NOTHROW(resolve_config(json{{"convention", "Normalized"}}));
}

TEST_CASE("config text parsing") {
  CHECK(parse_config_text("{\"n\": 101}")["n"] == 101);
  CHECK(thrown_kind([] { parse_config_text("[1, 2]"); }) == "config-invalid");
  CHECK(thrown_kind([] { parse_config_text("not json"); }) == "config-invalid");
}

TEST_CASE("set overrides") {
  json obj = json::object();
  apply_override(obj, "beta=-1.25");
  apply_override(obj, "n=2001");
  apply_override(obj, "convention=Normalized");
  CHECK(obj["beta"] == -1.25);
  CHECK(obj["n"] == 2001);
  CHECK(obj["convention"] == "Normalized");
  CHECK(obj["n"].is_number_integer());

  CHECK(thrown_kind([&] { apply_override(obj, "beta=abc"); }) == "config-invalid");
  CHECK(thrown_kind([&] { apply_override(obj, "beta=1.5x"); }) == "config-invalid");
  CHECK(thrown_kind([&] { apply_override(obj, "noequals"); }) == "config-invalid");
  CHECK(thrown_kind([&] { apply_override(obj, "=5"); }) == "config-invalid");
  CHECK(thrown_kind([&] { apply_override(obj, "n=12.5"); }) == "config-invalid");
}

TEST_CASE("echo round trip") {
  const RunConfig a = resolve_config(json{{"sigma", 0.2}, {"epsilon", 0.05}});
  const RunConfig b = resolve_config(echo_config(a));
  CHECK(b.alpha1 == a.alpha1);
  CHECK(b.alpha2 == a.alpha2);
  CHECK(b.beta == a.beta);
  CHECK(b.gamma == a.gamma);
  CHECK(b.epsilon == a.epsilon);
  CHECK(b.lambda == a.lambda);
  CHECK(b.n == a.n);
  REQUIRE(b.sigma.has_value());
  CHECK(*b.sigma == 0.2);

  const RunConfig d = resolve_config(json::object());
  const json echoed = echo_config(d);
  CHECK_FALSE(echoed.contains("sigma"));
  CHECK_NOTHROW(resolve_config(echoed));
}

TEST_CASE("ground state figure file") {
  const RunConfig cfg = resolve_config(json::object());
  const std::string path = tmp_path("fig2.csv");
  run_figure(2, cfg, path);
  const std::string text = slurp(path);
  const auto csv = parse_csv(text);
  REQUIRE(csv.header == std::vector<std::string>{"xi", "value"});
  REQUIRE(static_cast<int>(csv.rows.size()) == cfg.n);
  REQUIRE(csv.comments.size() == 1);
  CHECK(csv.comments[0] == "# excluded=0");
  CHECK(csv.rows.front()[0] == "-8.000000000000e+00");
  CHECK(csv.rows.back()[0] == "8.000000000000e+00");
  CHECK(csv.rows[2000][1] == "1.000000000000e+00");  // amplitude at the origin
  CHECK(text.find("inf-excluded") == std::string::npos);

  // byte-identical on rerun
  const std::string again = tmp_path("fig2_again.csv");
  run_figure(2, cfg, again);
  CHECK(slurp(again) == text);
}

TEST_CASE("potential figure has the two-well shape") {
  const RunConfig cfg = resolve_config(json::object());
  const std::string path = tmp_path("fig1.csv");
  run_figure(1, cfg, path);
  const auto csv = parse_csv(slurp(path));
  std::vector<double> v;
  v.reserve(csv.rows.size());
  for (const auto& row : csv.rows) v.push_back(std::stod(row[1]));
  int minima = 0;
  for (size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] < v[i - 1] && v[i] < v[i + 1]) ++minima;
  CHECK(minima == 2);
}

TEST_CASE("accumulated figure starts at the anchor") {
  const RunConfig cfg = resolve_config(json::object());
  const std::string path = tmp_path("fig5.csv");
  run_figure(5, cfg, path);
  const auto csv = parse_csv(slurp(path));
  CHECK(csv.rows[2000][1] == "0.000000000000e+00");
  double prev = -1e300;
  for (const auto& row : csv.rows) {
    const double v = std::stod(row[1]);
    CHECK(v >= prev);
    prev = v;
  }

  const RunConfig norm = resolve_config(json{{"convention", "Normalized"}});
  const std::string npath = tmp_path("fig5n.csv");
  run_figure(5, norm, npath);
  const auto ncsv = parse_csv(slurp(npath));
  CHECK(ncsv.rows.front()[1] == "0.000000000000e+00");
  CHECK(std::stod(ncsv.rows.back()[1]) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("deformed figures mask the pole window") {
  const RunConfig cfg = resolve_config(json{{"lambda", 2.0}});
  for (int id : {3, 4}) {
    const std::string path = tmp_path("fig_pole_" + std::to_string(id) + ".csv");
    run_figure(id, cfg, path);
    const std::string text = slurp(path);
    const auto csv = parse_csv(text);
    int tokens = 0;
    for (const auto& row : csv.rows)
      if (row[1] == "inf-excluded") ++tokens;
    CHECK(tokens == 11);  // 5 points each side of the root, plus the root row
    REQUIRE(csv.comments.size() == 1);
    CHECK(csv.comments[0] == "# excluded=11");

    const std::string again = tmp_path("fig_pole_again.csv");
    run_figure(id, cfg, again);
    CHECK(slurp(again) == text);
  }

  // far-from-singular lambda produces a clean file
  const RunConfig far = resolve_config(json::object());
  const std::string path = tmp_path("fig3_clean.csv");
  run_figure(3, far, path);
  const auto csv = parse_csv(slurp(path));
  CHECK(csv.comments[0] == "# excluded=0");
}

TEST_CASE("figure id is validated before any write") {
  const RunConfig cfg = resolve_config(json::object());
  const std::string path = tmp_path("fig_bad.csv");
  CHECK(thrown_kind([&] { run_figure(6, cfg, path); }) == "config-invalid");
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("sweep file layout") {
  const RunConfig cfg = resolve_config(json{{"n", 2001}});
  const std::string path = tmp_path("sweep.csv");
  run_lambda_sweep(cfg, {1e3, 2.0, 1e2}, path);
  const auto csv = parse_csv(slurp(path));
  REQUIRE(csv.header == std::vector<std::string>{"lambda", "sup_dev_u", "xi_star", "norm_check"});
  REQUIRE(csv.rows.size() == 3);
  // sorted ascending regardless of the input order
  CHECK(csv.rows[0][0] == "2.000000000000e+00");
  CHECK(csv.rows[2][0] == "1.000000000000e+03");
  CHECK(csv.rows[0][2].front() == '-');  // root on the negative side
  CHECK(csv.rows[1][2].empty());
  CHECK(csv.rows[2][2].empty());
  CHECK(std::stod(csv.rows[1][1]) > std::stod(csv.rows[2][1]));
  for (const auto& row : csv.rows)
    CHECK(std::stod(row[3]) == Catch::Approx(1.0).margin(1e-5));

  const std::string bad = tmp_path("sweep_bad.csv");
  CHECK(thrown_kind([&] { run_lambda_sweep(cfg, {10.0, -0.5}, bad); }) == "lambda-forbidden");
  CHECK_FALSE(std::filesystem::exists(bad));
}

TEST_CASE("consistency report passes on the default configuration") {
  const RunConfig cfg = resolve_config(json::object());
  const std::string path = tmp_path("report.json");
  const VerifyOutcome vo = run_verify(cfg, path);
  CHECK(vo.all_pass);

  const json rep = json::parse(slurp(path));
  const std::set<std::string> expected = {
      "riccati_residual",      "eq7_residual",       "schrodinger_residuals",
      "splitting",             "isospectral_table",  "morse",
      "printed_eq8_max_gap",   "printed_eq11_max_gap", "singularity",
      "normalization_check",   "config"};
  std::set<std::string> got;
  for (const auto& item : rep.items()) got.insert(item.key());
  CHECK(got == expected);

  const double h = (cfg.xi_max - cfg.xi_min) / (cfg.n - 1);
  CHECK(rep["schrodinger_residuals"]["phi0"].get<double>() <= 10.0 * h * h);
  CHECK(rep["schrodinger_residuals"]["phi1"].get<double>() <= 10.0 * h * h);
  CHECK(rep["splitting"]["rel_error"].get<double>() <= 0.02);
  CHECK(rep["splitting"]["expected"] == 0.1);
  REQUIRE(rep["isospectral_table"].size() == 3);
  for (const auto& row : rep["isospectral_table"]) {
    CHECK(row["ok"] == true);
    CHECK(row["max_deviation"].get<double>() <= row["tolerance"].get<double>());
  }

  // default lambda = 10 lies outside the accumulated range: no singularity
  CHECK(rep["singularity"]["lambda"] == 10.0);
  CHECK(rep["singularity"]["xi_star"].is_null());
  CHECK(rep["singularity"]["side_rule_ok"].is_null());

  const json& m = rep["morse"];
  CHECK(m["text_bias_2eg"] == Catch::Approx(-0.1).margin(1e-15));
  CHECK(m["eq13_bias"] == Catch::Approx(-0.05).margin(1e-15));
  CHECK(std::fabs(m["numerical_bias"].get<double>() - (-0.1)) <= 0.01);
  REQUIRE(m["eq14_minima"].is_array());
  CHECK(m["eq14_minima"][0].is_null());  // log of a negative ratio
  CHECK(m["eq14_minima"][1].is_number());
  CHECK(m["numerical_minima"][0].get<double>() < 0.0);
  CHECK(m["numerical_minima"][1].get<double>() > 0.0);

  CHECK(std::fabs(rep["normalization_check"].get<double>() - 1.0) <= 1e-6);
  CHECK(rep["config"]["n"] == 4001);
  CHECK(rep["config"]["beta"] == Catch::Approx(-2.5 / kSqrt2).margin(1e-15));

  // identical bytes on rerun
  const std::string again = tmp_path("report_again.json");
  run_verify(cfg, again);
  CHECK(slurp(again) == slurp(path));
}

TEST_CASE("report singularity block under a moderate deformation") {
  const RunConfig cfg = resolve_config(json{{"lambda", 2.0}});
  const VerifyOutcome vo = run_verify_compute(cfg);
  CHECK(vo.all_pass);
  const json& s = vo.report["singularity"];
  CHECK(s["lambda"] == 2.0);
  CHECK(s["xi_star"].get<double>() == Catch::Approx(-1.366).margin(2e-3));
  CHECK(s["side_rule_ok"] == true);
}

TEST_CASE("report text rendering") {
  const RunConfig cfg = resolve_config(json::object());
  const VerifyOutcome vo = run_verify_compute(cfg);
  const std::string text = render_verify_text(vo);
  CHECK(text.find("overall: PASS") != std::string::npos);
  CHECK(text.find("[ ok ] riccati_residual") != std::string::npos);
  CHECK(text.find("splitting_rel_error") != std::string::npos);
  CHECK(text.find("(informational)") != std::string::npos);
  CHECK(text.find("[FAIL]") == std::string::npos);

  VerifyOutcome failing;
  failing.report["printed_eq8_max_gap"] = 1.0;
  failing.report["printed_eq11_max_gap"] = 2.0;
  failing.checks.push_back(CheckLine{"synthetic_check", false, 5.0, 0.5});
  failing.all_pass = false;
  const std::string bad = render_verify_text(failing);
  CHECK(bad.find("[FAIL] synthetic_check") != std::string::npos);
  CHECK(bad.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("verification rejects unusable parameters up front") {
  RunConfig cfg = resolve_config(json::object());
  cfg.lambda = -0.5;
  CHECK(thrown_kind([&] { run_verify_compute(cfg); }) == "lambda-forbidden");
  cfg = resolve_config(json::object());
  cfg.epsilon = 0.0;
  CHECK(thrown_kind([&] { run_verify_compute(cfg); }) == "invalid-bounds");
}

TEST_CASE("fixed-format rendering and atomic writes") {
  CHECK(format_value(1.0) == "1.000000000000e+00");
  CHECK(format_value(0.0) == "0.000000000000e+00");
  CHECK(format_value(-1.5e-3) == "-1.500000000000e-03");

  const std::string path = tmp_path("atomic.txt");
  atomic_write_file(path, "alpha\nbeta\n");
  CHECK(slurp(path) == "alpha\nbeta\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));

  const std::string nowhere =
      (std::filesystem::path(tmp_path("")) / "missing_dir" / "x.txt").string();
  CHECK(thrown_kind([&] { atomic_write_file(nowhere, "x"); }) == "io-error");
}
