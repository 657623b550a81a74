#include <cmath>
#include <limits>
#include <regex>
#include <string>

#include "ews/params.hpp"
#include "ews/reporting.hpp"
#include "fixtures.hpp"

using namespace ews;
using fx::close;

namespace {

std::string data(const char* name) { return std::string(EWS_TEST_DATA_DIR) + "/" + name; }

struct Loaded {
  Params params;
  ModelShares shares;
};

Loaded load(const char* name) {
  Params p = load_params(data(name));
  ModelShares sh = build_shares(p.theta, p.theta_good_1);
  return {p, sh};
}

Json report_for(const char* name) {
  const auto [p, sh] = load(name);
  std::optional<std::pair<SectorAes, SectorAes>> aes;
  if (p.aes) {
    aes = std::pair{build_sector_aes(Sector::One, p.aes->first, sh), build_sector_aes(Sector::Two, p.aes->second, sh)};
  }
  return report_json(sh, build_ews(p, sh), aes);
}

double attr(const std::string& svg, const std::string& id, const std::string& name) {
  const std::regex re("id=\"" + id + "\"[^>]*" + name + "=\"([^\"]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, re));
  return std::stod(m[1]);
}

}  // namespace

TEST_CASE("parameter files") {
  SUBCASE("canonical file") {
    const Params p = load_params(data("cp1.json"));
    CHECK(p.theta[idx(Factor::T)][0] == 0.4);
    CHECK(p.theta_good_1 == 0.5);
    REQUIRE(p.aes);
    CHECK(p.aes->second.kt == 1.0);
    CHECK_FALSE(p.reduced);
    CHECK_FALSE(p.oracle);
  }
  SUBCASE("syntax errors carry line and column") {
    try {
      load_params(data("malformed.json"));
      FAIL("expected ParamError");
    } catch (const ParamError& e) {
      CHECK(std::string(e.what()).find("line 3, column 31") != std::string::npos);
    }
  }
  SUBCASE("structural errors") {
    CHECK_THROWS_AS(parse_params("[1, 2]"), ParamError);
    CHECK_THROWS_AS(parse_params(R"({"shares": {"theta": {"T": [0.4, 0.2]}, "theta_good_1": 0.5}})"), ParamError);
    CHECK_THROWS_AS(parse_params(R"({"shares": {"theta": {"T": [0.4], "K": [0.25, 0.5], "L": [0.35, 0.3]}, "theta_good_1": 0.5}})"),
                    ParamError);
    const std::string both =
        R"({"shares": {"theta": {"T": [0.4, 0.2], "K": [0.25, 0.5], "L": [0.35, 0.3]}, "theta_good_1": 0.5},
            "aes": {"sector1": {"LK": 1, "LT": 1, "KT": 1}, "sector2": {"LK": 1, "LT": 1, "KT": 1}},
            "ews": {"S": 1, "T": 1, "U": 1}})";
    CHECK_THROWS_AS(parse_params(both), ParamError);
  }
  SUBCASE("reduced and oracle sections") {
    const auto [p, sh] = load("ces_oracle.json");
    REQUIRE(p.oracle);
    CHECK(p.oracle->family == Technology::Ces);
    CHECK(p.oracle->elasticity == std::array{0.5, 0.5});
    const PrimitiveEconomy econ = build_economy(p, sh);
    CHECK(econ.sectors[1].weights[idx(Factor::K)] == 0.5);
    CHECK(econ.v_l == 0.325);
    const Params r = load_params(data("reduced_quadrant4.json"));
    REQUIRE(r.reduced);
    CHECK(r.reduced->u == -0.2);
  }
  SUBCASE("missing oracle section falls back to the calibrated Cobb-Douglas economy") {
    const auto [p, sh] = load("cp1.json");
    const PrimitiveEconomy econ = build_economy(p, sh);
    CHECK(econ.family == Technology::CobbDouglas);
    CHECK(close(econ.v_k, 0.375));
    CHECK(oracle_step(p) == kDefaultStep);
  }
}

TEST_CASE("serializer") {
  Json j = Json::object();
  j["third"] = 0.1;
  j["neg_zero"] = -0.0;
  j["nan"] = std::numeric_limits<double>::quiet_NaN();
  j["int"] = 3;
  j["list"] = Json::array({1.5, true, nullptr, "a\"b"});
  j["nested"] = {{"k", Json::array({Json::object({{"x", 1}})})}};
  const std::string expected =
      "{\n"
      "  \"third\": 0.10000000000000001,\n"
      "  \"neg_zero\": 0,\n"
      "  \"nan\": null,\n"
      "  \"int\": 3,\n"
      "  \"list\": [1.5, true, null, \"a\\\"b\"],\n"
      "  \"nested\": {\n"
      "    \"k\": [\n"
      "      {\n"
      "        \"x\": 1\n"
      "      }\n"
      "    ]\n"
      "  }\n"
      "}\n";
  CHECK(serialize(j) == expected);
  // the emitted text parses back to the same values
  const auto back = nlohmann::json::parse(serialize(j));
  CHECK(back["third"].get<double>() == 0.1);
}

TEST_CASE("report documents") {
  SUBCASE("key order and canonical values") {
    const Json r = report_for("cp1.json");
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"shares", "ews", "ratio", "delta", "elasticities", "classification",
                                           "geometry", "audit"});
    CHECK(close(r["elasticities"]["energy_price"]["x1_wT"].get<double>(), -6.0, 1e-12));
    CHECK(close(r["elasticities"]["energy_price"]["x2_wT"].get<double>(), 3.75, 1e-12));
    CHECK(r["classification"]["energy_subregion"] == "P1");
    CHECK(r["classification"]["status"] == "ok");
    CHECK(r["audit"]["identities_passed"] == true);
  }
  SUBCASE("byte-identical output for the same file") {
    CHECK(serialize(report_for("pb1.json")) == serialize(report_for("pb1.json")));
  }
  SUBCASE("second fixture") {
    const Json r = report_for("pb1.json");
    CHECK(r["classification"]["commodity_subregion"] == "Pb");
    CHECK(r["classification"]["theorem2"] == true);
    CHECK(close(r["elasticities"]["prices"]["x1_p2"].get<double>(), 0.0800, 1e-3));
  }
  SUBCASE("reduced input flags skipped identities") {
    const Json r = report_for("reduced_quadrant4.json");
    CHECK(r["ews"]["mode"] == "reduced");
    CHECK(r["audit"]["reduced"] == true);
    CHECK(r["audit"]["identities"][1]["status"] == "skipped");
    CHECK(r["classification"]["theorem1"] == true);
  }
  SUBCASE("undefined ratio") {
    const Json r = report_for("reduced_degenerate.json");
    CHECK(r["ratio"].is_null());
    CHECK(r["classification"]["status"] == "degenerate");
    CHECK(r["classification"]["reason"].get<std::string>().find("DegenerateRatio") != std::string::npos);
  }
}

TEST_CASE("grid specs") {
  const GridSpec d = parse_grid(kDefaultGrid);
  CHECK(d.kind == GridSpec::Kind::Ratio);
  CHECK(d.s_min == -3.0);
  CHECK(d.u_max == 3.0);
  CHECK(d.step == 0.05);
  const GridSpec r = parse_grid("ratio:-1:2:-4:1:0.5");
  CHECK(r.s_max == 2.0);
  CHECK(r.u_min == -4.0);
  const GridSpec a = parse_grid("aes:25");
  CHECK(a.kind == GridSpec::Kind::Aes);
  CHECK(a.draws == 25);
  for (const char* bad : {"ratio:1:0:0.1", "ratio:0:1:0", "ratio:0:1", "aes:0", "aes:2.5", "box:0:1:0.1", "ratio:a:1:0.1"}) {
    CHECK_THROWS_AS(parse_grid(bad), ParamError);
  }
}

TEST_CASE("ratio sweep on the canonical shares") {
  const SweepResult res = run_sweep(fx::cp1(), parse_grid(kDefaultGrid), 1);
  CHECK(res.rows.size() == 121 * 121);
  const Json s = sweep_summary(res);
  CHECK(s["mismatches"] == 0);
  CHECK(s["commodity_subregions"]["Pb"].get<int>() >= 1);
  CHECK(s["feasible"].get<int>() + s["infeasible"].get<int>() == 121 * 121);

  const std::string csv = sweep_csv(res);
  CHECK(csv.rfind(std::string(kSweepHeader) + "\n", 0) == 0);
  CHECK(csv.find("\n-0.5,2.6,1,boundary,Pa,") != std::string::npos);
  CHECK(csv.find("\n1,-3,1,infeasible,infeasible,,,\n") != std::string::npos);
  CHECK(csv.find("\n1.2,0.85,1,P1,Pa,-1,1,-1\n") != std::string::npos);
}

TEST_CASE("AES sweep is deterministic under a seed") {
  const ModelShares sh = fx::cp1();
  const std::string a = sweep_csv(run_sweep(sh, parse_grid("aes:300"), 11));
  const std::string b = sweep_csv(run_sweep(sh, parse_grid("aes:300"), 11));
  const std::string c = sweep_csv(run_sweep(sh, parse_grid("aes:300"), 12));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(sweep_summary(run_sweep(sh, parse_grid("aes:300"), 11))["mismatches"] == 0);
}

TEST_CASE("SVG figures") {
  const ModelShares sh = fx::cp1();
  const auto f = fx::cp1_cobb_douglas();
  SUBCASE("figure 1: T-lines meet at Q") {
    const std::string svg = render_svg(sh, f.ews.ratio(), 1, 1);
    CHECK(svg.find("id=\"boundary-left\"") != std::string::npos);
    CHECK(svg.find("id=\"boundary-right\"") != std::string::npos);
    CHECK(svg.find("id=\"asymptote-s\"") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("id=\"line-21\"") == std::string::npos);
    CHECK(svg.find("id=\"current-ratio\"") != std::string::npos);
    CHECK(svg.find("id=\"label-P1\"") != std::string::npos);
    const std::regex points("class=\"key-point\"");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), points), std::sregex_iterator()) == 3);
    const double m1 = attr(svg, "line-T1", "data-slope"), k1 = attr(svg, "line-T1", "data-intercept");
    const double m2 = attr(svg, "line-T2", "data-slope"), k2 = attr(svg, "line-T2", "data-intercept");
    const double s = (k2 - k1) / (m1 - m2);
    CHECK(close(s, attr(svg, "point-Q", "data-s"), 1e-12));
    CHECK(close(m1 * s + k1, attr(svg, "point-Q", "data-u"), 1e-12));
    CHECK(close(s, -1.25, 1e-12));
    CHECK(close(m1 * s + k1, -13.0 / 3.0, 1e-12));
  }
  SUBCASE("figure 2: line 21 through both R points") {
    const std::string svg = render_svg(sh, f.ews.ratio(), 1, 2);
    const double m = attr(svg, "line-21", "data-slope"), k = attr(svg, "line-21", "data-intercept");
    for (const char* id : {"point-R_T1", "point-R_T2"}) {
      CHECK(close(m * attr(svg, id, "data-s") + k, attr(svg, id, "data-u"), 1e-12));
    }
    CHECK(svg.find("id=\"line-T1\"") == std::string::npos);
    CHECK(svg.find("id=\"label-Pb\"") != std::string::npos);
  }
  SUBCASE("undefined ratio omits the marker") {
    const std::string svg = render_svg(sh, std::nullopt, 0, 1);
    CHECK(svg.find("current-ratio") == std::string::npos);
    CHECK(svg.find("id=\"point-Q\"") != std::string::npos);
  }
  SUBCASE("output is reproducible") { CHECK(render_svg(sh, f.ews.ratio(), 1, 1) == render_svg(sh, f.ews.ratio(), 1, 1)); }
  CHECK_THROWS_AS(render_svg(sh, std::nullopt, 0, 3), ParamError);
}
