#include "doctest.h"

#include <sstream>

#include "stratcomm/experiments.hpp"

using namespace stratcomm;
using nlohmann::json;

namespace {

json base_config() {
    return json::parse(R"({
      "alphabet_size": 2,
      "source": ["3/10", "7/10"],
      "utility": [["0", "1"], ["-2", "0"]],
      "d": "1/5",
      "n_min": 1,
      "n_max": 4,
      "strategy": {"kind": "closest_type"},
      "tie": {"kind": "worst_case", "threshold": "1/5"},
      "engine": "auto"
    })");
}

}  // namespace

TEST_CASE("config parsing accepts strings and integers, rejects floats") {
    const ExperimentConfig cfg = parse_config(base_config());
    CHECK(cfg.q == 2);
    CHECK(cfg.source[0] == Rational(3, 10));
    CHECK(cfg.utility(0, 1) == 1);
    CHECK(cfg.utility(1, 0) == -2);
    CHECK(cfg.d == Rational(1, 5));

    json decimals = base_config();
    decimals["source"] = {"0.3", "0.7"};
    CHECK(parse_config(decimals).source[0] == Rational(3, 10));

    json floats = base_config();
    floats["d"] = 0.2;
    CHECK_THROWS_AS(parse_config(floats), ConfigError);

    json bad_sum = base_config();
    bad_sum["source"] = {"1/2", "1/3"};
    CHECK_THROWS_AS(parse_config(bad_sum), ConfigError);

    json bad_kind = base_config();
    bad_kind["strategy"]["kind"] = "mystery";
    CHECK_THROWS_AS(parse_config(bad_kind), ConfigError);
}

TEST_CASE("config echo expands defaults and omits execution knobs") {
    json j = base_config();
    j.erase("tie");
    j.erase("engine");
    const ExperimentConfig cfg = parse_config(j);
    const json echo = cfg.echo();
    CHECK(echo["tie"]["kind"] == "worst_case");
    CHECK(echo["tie"]["threshold"] == "1/5");
    CHECK(echo["engine"] == "auto");
    CHECK(!echo.contains("threads"));
    CHECK(!echo.contains("out"));
}

TEST_CASE("utility normalization happens at the config boundary") {
    json j = base_config();
    j["utility"] = json::parse(R"([["5", "1"], ["0", "5"]])");
    const ExperimentConfig cfg = parse_config(j);
    CHECK(cfg.utility(0, 1) == -4);
    CHECK(cfg.utility(1, 0) == -5);
}

TEST_CASE("analyze-utility reports the worked matrices") {
    json j = base_config();
    j["alphabet_size"] = 3;
    j["source"] = {"1/5", "2/5", "2/5"};
    j["utility"] = json::parse(R"([["0","1","1"], ["-4","0","1"], ["-4","-4","0"]])");
    j["d"] = "0";
    const json out = cmd_analyze_utility(parse_config(j));
    CHECK(out["gamma"]["value"] == "-2");
    CHECK(out["gamma_sign"]["kind"] == "negative");
    CHECK(out["prop1"]["holds"] == true);
    CHECK(out["region"]["emptiness"] == "nonempty");

    json j4 = base_config();
    j4["alphabet_size"] = 4;
    j4["source"] = {"1/36", "1/36", "1/36", "11/12"};
    j4["utility"] = json::parse(
        R"([["0","-2","-13","-18"], ["1","0","-13","-18"],
            ["12","1","0","-18"], ["5","5","5","0"]])");
    j4["d"] = "0";
    const json out4 = cmd_analyze_utility(parse_config(j4));
    CHECK(out4["gamma"]["value"] == "-1");
    CHECK(out4["region"]["emptiness"] == "nonempty");
    CHECK(out4["region"]["r_inf"]["kind"] == "exact");

    // A binary zero matrix has entry sum 0, which the lossless binary
    // theorem pins to an empty region; the gamma = 0 case stays open only
    // beyond the binary alphabet.
    json jz = base_config();
    jz["utility"] = json::parse(R"([["0","0"], ["0","0"]])");
    jz["d"] = "0";
    const json outz = cmd_analyze_utility(parse_config(jz));
    CHECK(outz["gamma"]["value"] == "0");
    CHECK(outz["region"]["emptiness"] == "empty");
    CHECK(outz["binary_sum"] == "0");

    json jz3 = base_config();
    jz3["alphabet_size"] = 3;
    jz3["source"] = {"1/3", "1/3", "1/3"};
    jz3["utility"] = json::parse(R"([["0","0","0"], ["0","0","0"], ["0","0","0"]])");
    jz3["d"] = "0";
    const json outz3 = cmd_analyze_utility(parse_config(jz3));
    CHECK(outz3["gamma"]["value"] == "0");
    CHECK(outz3["region"]["emptiness"] == "unknown_gamma_zero");
}

TEST_CASE("simulate runs both engines and agrees") {
    json j = base_config();
    j["n_max"] = 6;
    j["strategy"] = {{"kind", "closest_type"}};
    ExperimentConfig cfg = parse_config(j);

    cfg.engine = ExperimentConfig::Engine::sequence;
    const json seq = cmd_simulate(cfg, 1);
    cfg.engine = ExperimentConfig::Engine::type;
    const json typ = cmd_simulate(cfg, 1);
    REQUIRE(seq["results"].size() == typ["results"].size());
    for (std::size_t i = 0; i < seq["results"].size(); ++i) {
        CHECK(seq["results"][i]["error_prob"] == typ["results"][i]["error_prob"]);
        CHECK(seq["results"][i]["recovered_prob"] == typ["results"][i]["recovered_prob"]);
    }
}

TEST_CASE("brute-force command sweeps the n range") {
    json j = base_config();
    j["d"] = "0";
    j["n_max"] = 3;
    j["utility"] = json::parse(R"([["0","1"], ["-1","0"]])");
    const json out = cmd_brute_force(parse_config(j), 2);
    REQUIRE(out["results"].size() == 3);
    for (const auto& row : out["results"]) {
        const std::string e = row["min_worst_case_error"].get<std::string>();
        CHECK(e != "0");
    }
}

TEST_CASE("example2 emits a deterministic CSV with both engines") {
    const std::string csv1 = cmd_example2_csv(1);
    const std::string csv2 = cmd_example2_csv(2);
    CHECK(csv1 == csv2);

    std::istringstream in(csv1);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# config:", 0) == 0);
    std::getline(in, line);
    CHECK(line ==
          "n,strategy_id,engine,recovered_prob_strategic,recovered_prob_cooperative,"
          "error_prob,rate_bits,image_rate_bits");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10 * 4 * 2);
    CHECK(csv1.find("\r\n") == std::string::npos);  // LF endings only
}

TEST_CASE("verify suites are addressable by name") {
    CHECK_THROWS_AS(run_verify_suite("nonsense"), std::invalid_argument);
    const SuiteResult r = run_verify_suite("dbar_anchors");
    CHECK(r.pass());
    const json j = suite_to_json(r);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() == r.checks.size());
}
