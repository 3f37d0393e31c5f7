#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "bkvg/cli.hpp"
#include "bkvg/report.hpp"

using namespace bkvg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bkvg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parse(const Run& r) { return Json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("report_cli") {
  TEST_CASE("float formatting") {
    Json j;
    j["a"] = 1.0;
    j["b"] = -0.000123456789012345;
    j["c"] = 3;
    j["d"] = std::numeric_limits<double>::infinity();
    j["e"] = Json::array({0.5, "s"});
    j["f"] = -0.0;
    CHECK(dump_report(j) ==
          "{\n  \"a\": 1.00000000000e+00,\n  \"b\": -1.23456789012e-04,\n  \"c\": 3,\n  \"d\": \"inf\",\n"
          "  \"e\": [\n    5.00000000000e-01,\n    \"s\"\n  ],\n  \"f\": 0.00000000000e+00\n}\n");
  }

  TEST_CASE("fields carry certification") {
    Json r = real_field(2.0, Certification::Oracle);
    CHECK(r["certification"] == "oracle");
    Json c = complex_field(cplx(1.0, -2.0), Certification::BothAgree);
    CHECK(c["re"] == 1.0);
    CHECK(c["im"] == -2.0);
    CHECK(c["certification"] == "both-agree");
  }

  TEST_CASE("csv layout") {
    NumericalRangeReport r;
    r.support_samples = {{0.0, 1.5}, {3.0, -0.25}};
    CHECK(support_csv(r) == "theta,support_value\n0.00000000000e+00,1.50000000000e+00\n"
                            "3.00000000000e+00,-2.50000000000e-01\n");
  }

  TEST_CASE("analyze") {
    Run r = cli({"analyze", "--family", "A", "--gamma", "2"});
    REQUIRE(r.code == 0);
    Json j = parse(r);
    CHECK(j["schema"] == kSchema);
    CHECK(j["payload"]["regime"] == "one_dim_kernel");
    CHECK_FALSE(j["payload"].contains("chi"));
    CHECK(j["config_echo"]["gamma"] == 2.0);

    Json two = parse(cli({"analyze", "--family", "A", "--gamma", "1"}));
    CHECK(two["payload"]["regime"] == "two_dim_kernel");
    CHECK(two["payload"]["chi"]["chi"].size() == 3);

    CHECK(cli({"analyze", "--family", "A", "--gamma", "-1"}).code == kExitInvalidInput);
    CHECK(cli({"analyze", "--family", "B", "--gamma", "1"}).code == kExitInvalidInput);
    CHECK(cli({"analyze", "--gamma", "abc"}).code == kExitInvalidInput);
    CHECK(cli({"analyze", "--csv"}).code == kExitInvalidInput);
    CHECK(cli({}).code == kExitInvalidInput);
  }

  TEST_CASE("check") {
    Run zero = cli({"check", "--family", "A", "--gamma", "2", "--d-re", "0"});
    REQUIRE(zero.code == 0);
    CHECK(parse(zero)["payload"]["accretive"] == false);

    // Re(d mu) = nu for real d = nu / mu
    FamilyInstance c = instantiate(Family::HardyReal, 2.0);
    std::ostringstream d;
    d.precision(17);
    cplx dc = nu(c) / mu(c);
    d << dc.real();
    std::ostringstream di;
    di.precision(17);
    di << dc.imag();
    Json edge = parse(cli({"check", "--family", "C", "--gamma", "2", "--d-re", d.str(), "--d-im", di.str()}));
    CHECK(edge["payload"]["closability"]["closable"] == true);

    Json acc = parse(cli({"check", "--family", "A", "--gamma", "2", "--d-re", "5"}));
    double m = acc["payload"]["margin"]["value"];
    double b = acc["payload"]["b_matrix"]["entries"][0][0]["re"];
    CHECK(b == doctest::Approx(3.0 * m).epsilon(1e-10));
    CHECK(acc["payload"]["v_d"]["operator_domain_vectors"].size() == 2);
    CHECK_FALSE(acc["warnings"].empty());
    CHECK(acc["payload"]["lower_bound"].contains("rayleigh_inf"));

    Json fr = parse(cli({"check", "--family", "A", "--gamma", "2", "--friedrichs"}));
    CHECK(fr["payload"]["margin"]["value"] == "inf");
  }

  TEST_CASE("compare") {
    Json j = parse(cli({"compare", "--family", "A", "--gamma", "2", "--d-re", "5", "--d2-re", "5"}));
    CHECK(j["payload"]["order"] == "equal");
    Json f = parse(cli({"compare", "--family", "A", "--gamma", "2", "--friedrichs", "--d2-re", "5"}));
    CHECK(f["payload"]["order"] == "greater_equal");
    CHECK(cli({"compare", "--family", "A", "--gamma", "2", "--d-re", "0", "--d2-re", "5"}).code == kExitInvalidInput);
  }

  TEST_CASE("numrange") {
    Json c = parse(cli({"numrange", "--family", "C", "--gamma", "2", "--mesh", "256", "--theta-steps", "64"}));
    CHECK(c["payload"]["extremal"] == true);
    Run csv = cli({"numrange", "--family", "A", "--gamma", "2", "--mesh", "64", "--theta-steps", "16", "--csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("theta,support_value\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 17);
    CHECK(csv.out.find('\r') == std::string::npos);
    CHECK(cli({"numrange", "--mesh", "4"}).code == kExitInvalidInput);
    CHECK(cli({"numrange", "--csv", "--json"}).code == kExitInvalidInput);
  }

  TEST_CASE("csv file plus summary") {
    auto path = std::filesystem::temp_directory_path() / "bkvg_test_range.csv";
    Run r = cli({"numrange", "--family", "C", "--gamma", "1", "--mesh", "64", "--theta-steps", "16", "--csv", "--out",
                 path.string()});
    REQUIRE(r.code == 0);
    CHECK(parse(r)["payload"]["samples"] == 16);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "theta,support_value");
    std::filesystem::remove(path);
  }

  TEST_CASE("config precedence") {
    auto cfg = temp_file("bkvg_test_config.toml", "family = \"A\"\ngamma = 1.0\n");
    Json from_file = parse(cli({"analyze", "--config", cfg.string()}));
    CHECK(from_file["payload"]["regime"] == "two_dim_kernel");
    Json flag_wins = parse(cli({"analyze", "--config", cfg.string(), "--gamma", "2"}));
    CHECK(flag_wins["payload"]["regime"] == "one_dim_kernel");

    setenv("BKVG_CONFIG", cfg.string().c_str(), 1);
    Json env = parse(cli({"analyze"}));
    CHECK(env["config_echo"]["gamma"] == 1.0);
    unsetenv("BKVG_CONFIG");

    auto bad = temp_file("bkvg_test_bad.toml", "gamma = \"two\"\n");
    CHECK(cli({"analyze", "--config", bad.string()}).code == kExitInvalidInput);
    auto unknown = temp_file("bkvg_test_unknown.toml", "colour = 1\n");
    CHECK(cli({"analyze", "--config", unknown.string()}).code == kExitInvalidInput);
    CHECK(cli({"analyze", "--config", "/nonexistent/bkvg.toml"}).code == kExitInvalidInput);
    std::filesystem::remove(cfg);
    std::filesystem::remove(bad);
    std::filesystem::remove(unknown);
  }

  TEST_CASE("repeat runs are byte identical") {
    std::vector<std::vector<std::string>> cmds = {
        {"analyze", "--family", "C", "--gamma", "0.5"},
        {"check", "--family", "A", "--gamma", "1", "--d-re", "2", "--d-im", "-1"},
        {"numrange", "--family", "A", "--gamma", "2", "--mesh", "128", "--theta-steps", "32"},
    };
    for (const auto& c : cmds) CHECK(cli(c).out == cli(c).out);
  }

  TEST_CASE("quick verification") {
    Run r = cli({"verify", "--level", "quick"});
    CHECK(r.code == 0);
    Json j = parse(r);
    CHECK(j["payload"]["total"] == 6);
    CHECK(cli({"verify", "--level", "slow"}).code == kExitInvalidInput);
  }
}
