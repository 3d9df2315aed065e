#pragma once

#include <optional>
#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

#include "stratcomm/game.hpp"
#include "stratcomm/rate_region.hpp"
#include "stratcomm/verify.hpp"

namespace stratcomm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One batch-experiment description. Rationals arrive as "num/den" or
/// decimal strings (or JSON integers); JSON floats are rejected because the
/// binary value would silently differ from the intended decimal.
struct ExperimentConfig {
    int q = 2;
    Distribution source = Distribution::binary(Rational(1, 2));
    UtilityMatrix utility = UtilityMatrix::binary(0, 0);
    Rational d = 0;
    Rational delta = 0;
    int n_min = 1;
    int n_max = 1;

    struct StrategySpec {
        enum class Kind { closest_type, type_class_list, typical_set, explicit_list };
        Kind kind = Kind::closest_type;
        std::vector<std::vector<long long>> class_counts;  // type_class_list
        Rational epsilon;                                  // typical_set
        std::vector<std::vector<int>> sequences;           // explicit_list
        std::optional<std::vector<int>> anchor;            // else lexicographic minimum
    } strategy;

    TieRule tie = TieRule::lex_min();
    enum class Engine { sequence, type, auto_select };
    Engine engine = Engine::auto_select;
    long long cap = 1LL << 24;

    /// The experiment-defining parameters (execution knobs such as thread
    /// count excluded, so outputs stay byte-identical across them).
    nlohmann::json echo() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

/// Strategy a config describes at block length n.
ReceiverStrategy build_strategy(const ExperimentConfig& cfg, int n);

nlohmann::json cmd_analyze_utility(const ExperimentConfig& cfg);
nlohmann::json cmd_simulate(const ExperimentConfig& cfg, int threads);
nlohmann::json cmd_brute_force(const ExperimentConfig& cfg, int threads);

/// The nearby-type-class comparison: p = 3/10, slack 1/5, utilities (1,-2),
/// image unions of 1..4 adjacent type classes, n = 1..10, both engines.
std::string cmd_example2_csv(int threads);

/// The rate-gap demonstration at n = 36 with its five claims.
nlohmann::json cmd_example3(const Rational& delta, int threads);
bool example3_claims_pass(const nlohmann::json& report);

nlohmann::json suite_to_json(const SuiteResult& suite);

nlohmann::json region_to_json(const RegionReport& report);

}  // namespace stratcomm
