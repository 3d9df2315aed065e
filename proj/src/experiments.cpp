#include "stratcomm/experiments.hpp"

#include <fstream>
#include <sstream>

#include "stratcomm/rate_distortion.hpp"
#include "stratcomm/transport.hpp"
#include "stratcomm/type_engine.hpp"

namespace stratcomm {

using nlohmann::json;

namespace {

Rational json_rational(const json& v, const std::string& field) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(field + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float())
        throw ConfigError(field +
                          ": JSON floats are inexact; write the value as a string "
                          "(\"3/10\" or \"0.3\")");
    throw ConfigError(field + ": expected a rational as string or integer");
}

json rational_json(const Rational& r) { return rational_to_string(r); }

std::string engine_name(ExperimentConfig::Engine e) {
    switch (e) {
        case ExperimentConfig::Engine::sequence: return "sequence";
        case ExperimentConfig::Engine::type: return "type";
        default: return "auto";
    }
}

std::string strategy_kind_name(ExperimentConfig::StrategySpec::Kind k) {
    using Kind = ExperimentConfig::StrategySpec::Kind;
    switch (k) {
        case Kind::closest_type: return "closest_type";
        case Kind::type_class_list: return "type_class_list";
        case Kind::typical_set: return "typical_set";
        default: return "explicit";
    }
}

}  // namespace

json ExperimentConfig::echo() const {
    json j;
    j["alphabet_size"] = q;
    json src = json::array();
    for (int i = 0; i < source.q(); ++i) src.push_back(rational_json(source[i]));
    j["source"] = src;
    json um = json::array();
    for (int i = 0; i < utility.q(); ++i) {
        json row = json::array();
        for (int k = 0; k < utility.q(); ++k) row.push_back(rational_json(utility(i, k)));
        um.push_back(row);
    }
    j["utility"] = um;
    j["d"] = rational_json(d);
    j["delta"] = rational_json(delta);
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    json strat;
    strat["kind"] = strategy_kind_name(strategy.kind);
    if (strategy.kind == StrategySpec::Kind::type_class_list)
        strat["classes"] = strategy.class_counts;
    if (strategy.kind == StrategySpec::Kind::typical_set)
        strat["epsilon"] = rational_json(strategy.epsilon);
    if (strategy.kind == StrategySpec::Kind::explicit_list)
        strat["sequences"] = strategy.sequences;
    if (strategy.anchor) strat["anchor"] = *strategy.anchor;
    j["strategy"] = strat;
    json tie_j;
    tie_j["kind"] = tie.kind == TieRule::Kind::worst_case ? "worst_case" : "lex_min";
    if (tie.kind == TieRule::Kind::worst_case)
        tie_j["threshold"] = rational_json(tie.threshold);
    j["tie"] = tie_j;
    j["engine"] = engine_name(engine);
    j["cap"] = cap;
    return j;
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    if (!j.contains("alphabet_size") || !j["alphabet_size"].is_number_integer())
        throw ConfigError("alphabet_size: required integer");
    cfg.q = j["alphabet_size"].get<int>();
    if (cfg.q < 2) throw ConfigError("alphabet_size: must be >= 2");

    if (!j.contains("source") || !j["source"].is_array() ||
        static_cast<int>(j["source"].size()) != cfg.q)
        throw ConfigError("source: required array of length alphabet_size");
    {
        std::vector<Rational> probs;
        for (int i = 0; i < cfg.q; ++i)
            probs.push_back(json_rational(j["source"][i], "source[" + std::to_string(i) + "]"));
        try {
            cfg.source = Distribution(std::move(probs));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("source: ") + e.what());
        }
    }

    if (!j.contains("utility") || !j["utility"].is_array() ||
        static_cast<int>(j["utility"].size()) != cfg.q)
        throw ConfigError("utility: required q x q array");
    {
        std::vector<std::vector<Rational>> raw(cfg.q, std::vector<Rational>(cfg.q));
        for (int i = 0; i < cfg.q; ++i) {
            if (!j["utility"][i].is_array() || static_cast<int>(j["utility"][i].size()) != cfg.q)
                throw ConfigError("utility: row " + std::to_string(i) + " must have q entries");
            for (int k = 0; k < cfg.q; ++k)
                raw[i][k] = json_rational(j["utility"][i][k],
                                          "utility[" + std::to_string(i) + "][" +
                                              std::to_string(k) + "]");
        }
        cfg.utility = UtilityMatrix::normalized(raw);
    }

    if (j.contains("d")) cfg.d = json_rational(j["d"], "d");
    if (cfg.d < 0 || cfg.d > 1) throw ConfigError("d: must lie in [0,1]");
    if (j.contains("delta")) cfg.delta = json_rational(j["delta"], "delta");
    if (j.contains("n_min")) cfg.n_min = j["n_min"].get<int>();
    if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw ConfigError("n range: need 1 <= n_min <= n_max");

    if (j.contains("strategy")) {
        const json& s = j["strategy"];
        const std::string kind = s.value("kind", "closest_type");
        using Kind = ExperimentConfig::StrategySpec::Kind;
        if (kind == "closest_type") {
            cfg.strategy.kind = Kind::closest_type;
        } else if (kind == "type_class_list") {
            cfg.strategy.kind = Kind::type_class_list;
            if (!s.contains("classes") || !s["classes"].is_array() || s["classes"].empty())
                throw ConfigError("strategy.classes: required nonempty array of count vectors");
            for (const auto& c : s["classes"]) {
                std::vector<long long> counts = c.get<std::vector<long long>>();
                if (static_cast<int>(counts.size()) != cfg.q)
                    throw ConfigError("strategy.classes: each entry needs q counts");
                cfg.strategy.class_counts.push_back(std::move(counts));
            }
        } else if (kind == "typical_set") {
            cfg.strategy.kind = Kind::typical_set;
            if (!s.contains("epsilon"))
                throw ConfigError("strategy.epsilon: required for typical_set");
            cfg.strategy.epsilon = json_rational(s["epsilon"], "strategy.epsilon");
            if (cfg.strategy.epsilon <= 0) throw ConfigError("strategy.epsilon: must be > 0");
        } else if (kind == "explicit") {
            cfg.strategy.kind = Kind::explicit_list;
            if (!s.contains("sequences") || !s["sequences"].is_array() || s["sequences"].empty())
                throw ConfigError("strategy.sequences: required nonempty array");
            for (const auto& seq : s["sequences"])
                cfg.strategy.sequences.push_back(seq.get<std::vector<int>>());
        } else {
            throw ConfigError("strategy.kind: unknown kind '" + kind + "'");
        }
        if (s.contains("anchor")) cfg.strategy.anchor = s["anchor"].get<std::vector<int>>();
    }

    if (j.contains("tie")) {
        const json& t = j["tie"];
        const std::string kind = t.value("kind", "worst_case");
        if (kind == "worst_case") {
            Rational threshold = cfg.d;
            if (t.contains("threshold")) threshold = json_rational(t["threshold"], "tie.threshold");
            cfg.tie = TieRule::worst_case(threshold);
        } else if (kind == "lex_min") {
            cfg.tie = TieRule::lex_min();
        } else {
            throw ConfigError("tie.kind: unknown kind '" + kind + "'");
        }
    } else {
        cfg.tie = TieRule::worst_case(cfg.d);
    }

    if (j.contains("engine")) {
        const std::string e = j["engine"].get<std::string>();
        if (e == "sequence")
            cfg.engine = ExperimentConfig::Engine::sequence;
        else if (e == "type")
            cfg.engine = ExperimentConfig::Engine::type;
        else if (e == "auto")
            cfg.engine = ExperimentConfig::Engine::auto_select;
        else
            throw ConfigError("engine: must be sequence, type or auto");
    }
    if (j.contains("cap")) cfg.cap = j["cap"].get<long long>();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

ReceiverStrategy build_strategy(const ExperimentConfig& cfg, int n) {
    using Kind = ExperimentConfig::StrategySpec::Kind;
    std::optional<Sequence> anchor;
    if (cfg.strategy.anchor) anchor = Sequence(*cfg.strategy.anchor, cfg.q);
    switch (cfg.strategy.kind) {
        case Kind::closest_type: {
            // Type class nearest to the source in total variation, ties to
            // the lexicographically smallest type.
            const auto types = enumerate_types(n, cfg.q);
            const TypeVector* best = nullptr;
            Rational best_tv;
            for (const auto& t : types) {
                Rational tv = 0;
                for (int i = 0; i < cfg.q; ++i)
                    tv += abs(Rational(t.counts[i], n) - cfg.source[i]);
                if (!best || tv < best_tv) {
                    best = &t;
                    best_tv = tv;
                }
            }
            return ReceiverStrategy::from_type_classes({*best}, anchor);
        }
        case Kind::type_class_list: {
            std::vector<TypeVector> classes;
            for (const auto& counts : cfg.strategy.class_counts) {
                TypeVector t(counts);
                if (t.n() != n)
                    throw ConfigError("strategy.classes: counts sum to " +
                                      std::to_string(t.n()) + ", expected n = " +
                                      std::to_string(n));
                classes.push_back(std::move(t));
            }
            return ReceiverStrategy::from_type_classes(std::move(classes), anchor);
        }
        case Kind::typical_set: {
            auto classes = typical_types(cfg.source, cfg.strategy.epsilon, n);
            if (classes.empty())
                throw ConfigError("strategy: the typical set is empty at n = " +
                                  std::to_string(n));
            return ReceiverStrategy::from_type_classes(std::move(classes), anchor);
        }
        case Kind::explicit_list: {
            std::vector<Sequence> seqs;
            for (const auto& raw : cfg.strategy.sequences) {
                if (static_cast<int>(raw.size()) != n)
                    throw ConfigError("strategy.sequences: length mismatch with n");
                seqs.emplace_back(raw, cfg.q);
            }
            return ReceiverStrategy::from_sequences(std::move(seqs), anchor);
        }
    }
    throw std::logic_error("build_strategy: unreachable");
}

json region_to_json(const RegionReport& report) {
    json j;
    switch (report.emptiness) {
        case RegionEmptiness::empty: j["emptiness"] = "empty"; break;
        case RegionEmptiness::nonempty: j["emptiness"] = "nonempty"; break;
        case RegionEmptiness::unknown_gamma_zero: j["emptiness"] = "unknown_gamma_zero"; break;
        case RegionEmptiness::unknown: j["emptiness"] = "unknown"; break;
    }
    auto bound = [](const RateBound& b) {
        json o;
        switch (b.kind) {
            case RateBound::Kind::none: o["kind"] = "none"; return o;
            case RateBound::Kind::exact: o["kind"] = "exact"; break;
            case RateBound::Kind::upper_bound: o["kind"] = "upper_bound"; break;
            case RateBound::Kind::lower_bound: o["kind"] = "lower_bound"; break;
        }
        o["bits"] = real_to_string(b.bits);
        o["clause"] = b.clause;
        return o;
    };
    j["r_inf"] = bound(report.r_inf);
    j["r_sup"] = bound(report.r_sup);
    j["capacity_bits"] = real_to_string(report.capacity_bits);
    j["strong_converse"] = report.strong_converse;
    if (report.strong_converse) j["strong_converse_condition"] = report.strong_converse_condition;
    return j;
}

json cmd_analyze_utility(const ExperimentConfig& cfg) {
    json out;
    out["config"] = cfg.echo();
    const UtilityMatrix& u = cfg.utility;

    if (u.q() <= 9) {
        const GammaResult g = gamma(u);
        json gj;
        gj["value"] = rational_json(g.value);
        gj["witness_permutation"] = g.witness;
        gj["witness_cycles"] = g.witness_cycles;
        out["gamma"] = gj;
    } else {
        out["gamma"] = nullptr;
    }

    const GammaSignResult sign = gamma_sign(u);
    json sj;
    sj["kind"] = sign.kind == GammaSignKind::negative
                     ? "negative"
                     : (sign.kind == GammaSignKind::zero ? "zero" : "positive");
    if (sign.witness_cycle) {
        sj["witness_cycle"] = *sign.witness_cycle;
        sj["witness_sum"] = rational_json(sign.witness_sum);
    }
    out["gamma_sign"] = sj;

    const Prop1Result p1 = prop1_holds(u);
    json pj;
    pj["holds"] = p1.holds;
    pj["acyclic"] = p1.acyclic;
    pj["margin"] = p1.margin;
    if (p1.cycle_witness) pj["cycle_witness"] = *p1.cycle_witness;
    out["prop1"] = pj;

    if (u.q() == 2) out["binary_sum"] = rational_json(u.binary_sum());
    out["region"] = region_to_json(classify_region(u, cfg.source, cfg.d));
    return out;
}

namespace {

json outcome_to_json(const GameOutcome& o, long long n) {
    json j;
    j["engine"] = "sequence";
    j["recovered_prob"] = rational_json(o.recovered_prob);
    j["error_prob"] = rational_json(o.error_prob);
    j["coop_recovered_prob"] = rational_json(o.coop_recovered_prob);
    j["a_size"] = o.a_size.str();
    j["rate_bits"] = o.rate_bits ? json(real_to_string(*o.rate_bits)) : json(nullptr);
    j["image_size"] = o.image_size.str();
    j["image_rate_bits"] = real_to_string(o.image_rate_bits);
    (void)n;
    return j;
}

json outcome_to_json(const TypeOutcome& o, long long n) {
    json j;
    j["engine"] = "type";
    j["recovered_prob"] = rational_json(o.recovered_prob);
    j["error_prob"] = rational_json(o.error_prob);
    j["coop_recovered_prob"] = rational_json(o.coop_recovered_prob);
    j["a_exact"] = o.a_exact;
    if (o.a_exact) {
        j["a_size"] = o.a_lower_size.str();
        j["rate_bits"] = o.rate_bits ? json(real_to_string(*o.rate_bits)) : json(nullptr);
    } else {
        j["a_size_lower"] = o.a_lower_size.str();
        j["a_size_upper"] = o.a_upper_size.str();
        j["rate_lower_bits"] =
            o.rate_lower_bits ? json(real_to_string(*o.rate_lower_bits)) : json(nullptr);
        j["rate_upper_bits"] =
            o.rate_upper_bits ? json(real_to_string(*o.rate_upper_bits)) : json(nullptr);
    }
    j["reachable_image_size"] = o.reachable_size.str();
    j["reachable_image_rate_bits"] = real_to_string(o.reachable_rate_bits);
    (void)n;
    return j;
}

}  // namespace

json cmd_simulate(const ExperimentConfig& cfg, int threads) {
    json out;
    out["config"] = cfg.echo();
    json rows = json::array();
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const ReceiverStrategy g = build_strategy(cfg, n);
        bool use_sequence;
        switch (cfg.engine) {
            case ExperimentConfig::Engine::sequence: use_sequence = true; break;
            case ExperimentConfig::Engine::type: use_sequence = false; break;
            default: {
                double logsize = n * std::log2(static_cast<double>(cfg.q));
                use_sequence = logsize <= std::log2(static_cast<double>(cfg.cap));
            }
        }
        json row;
        row["n"] = n;
        if (use_sequence) {
            EvalOptions opts;
            opts.cap = cfg.cap;
            opts.threads = threads;
            row.update(outcome_to_json(evaluate(g, cfg.utility, cfg.source, cfg.d, cfg.tie, opts),
                                       n));
        } else {
            row.update(outcome_to_json(
                type_level_evaluate(g, cfg.utility, cfg.source, cfg.d, cfg.tie, threads), n));
        }
        rows.push_back(row);
    }
    out["results"] = rows;
    return out;
}

json cmd_brute_force(const ExperimentConfig& cfg, int threads) {
    json out;
    out["config"] = cfg.echo();
    json rows = json::array();
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const BruteForceResult r =
            brute_force_min_error(n, cfg.source, cfg.utility, cfg.d, threads);
        json row;
        row["n"] = n;
        row["min_worst_case_error"] = rational_json(r.min_error);
        json image = json::array();
        for (const auto& s : r.witness_image) image.push_back(s.symbols);
        row["witness_image"] = image;
        rows.push_back(row);
    }
    out["results"] = rows;
    return out;
}

std::string cmd_example2_csv(int threads) {
    const Distribution p = Distribution::binary(Rational(3, 10));
    const UtilityMatrix u = UtilityMatrix::binary(1, -2);
    const Rational delta(1, 5);
    const TieRule tie = TieRule::worst_case(delta);

    json config;
    config["experiment"] = "nearby-type-class comparison";
    config["source"] = {"3/10", "7/10"};
    config["utility"] = {{"0", "1"}, {"-2", "0"}};
    config["delta"] = "1/5";
    config["n_min"] = 1;
    config["n_max"] = 10;
    config["strategies"] = "unions of 1..4 adjacent type classes above the floor type";

    std::ostringstream csv;
    csv << "# config: " << config.dump() << "\n";
    csv << "n,strategy_id,engine,recovered_prob_strategic,recovered_prob_cooperative,"
           "error_prob,rate_bits,image_rate_bits\n";
    for (int n = 1; n <= 10; ++n) {
        const long long z1 = 3LL * n / 10;  // largest type with P(0) <= 3/10
        for (int i = 1; i <= 4; ++i) {
            std::vector<TypeVector> classes;
            for (int k = 0; k < i; ++k)
                if (z1 + k <= n) classes.push_back(TypeVector({z1 + k, n - z1 - k}));
            const ReceiverStrategy g = ReceiverStrategy::from_type_classes(classes);

            EvalOptions opts;
            opts.threads = threads;
            const GameOutcome seq = evaluate(g, u, p, delta, tie, opts);
            csv << n << "," << i << ",sequence," << rational_to_string(seq.recovered_prob)
                << "," << rational_to_string(seq.coop_recovered_prob) << ","
                << rational_to_string(seq.error_prob) << ","
                << (seq.rate_bits ? real_to_string(*seq.rate_bits) : "") << ","
                << real_to_string(seq.image_rate_bits) << "\n";

            const TypeOutcome typ = type_level_evaluate(g, u, p, delta, tie, threads);
            csv << n << "," << i << ",type," << rational_to_string(typ.recovered_prob) << ","
                << rational_to_string(typ.coop_recovered_prob) << ","
                << rational_to_string(typ.error_prob) << ","
                << (typ.rate_bits ? real_to_string(*typ.rate_bits) : "") << ","
                << real_to_string(typ.reachable_rate_bits) << "\n";
        }
    }
    return csv.str();
}

json cmd_example3(const Rational& delta, int threads) {
    const int n = 36;
    const Distribution p({Rational(1, 36), Rational(1, 36), Rational(1, 36), Rational(11, 12)});
    const UtilityMatrix u({{0, -2, -13, -18},
                           {1, 0, -13, -18},
                           {12, 1, 0, -18},
                           {5, 5, 5, 0}});
    const TypeVector t_px({1, 1, 1, 33});
    const TypeVector t_third({0, 12, 12, 12});
    const TypeVector t_hat({12, 12, 0, 12});

    json out;
    json config;
    config["experiment"] = "rate-gap demonstration, n = 36";
    config["source"] = {"1/36", "1/36", "1/36", "11/12"};
    config["delta"] = rational_to_string(delta);
    config["slack_condition_1/6-46d>12d"] = Rational(1, 6) - 46 * delta > 12 * delta;
    out["config"] = config;

    const ReceiverStrategy g = ReceiverStrategy::from_type_classes({t_px, t_third});
    const TypeOutcome res =
        type_level_evaluate(g, u, p, delta, TieRule::worst_case(delta), threads);

    json claims = json::array();
    auto claim = [&](const std::string& id, const std::string& text, bool pass, json values) {
        json c;
        c["id"] = id;
        c["description"] = text;
        c["pass"] = pass;
        c["values"] = std::move(values);
        claims.push_back(c);
    };

    // (i) every source type with P(3) <= 2/3 errs
    {
        long long checked = 0, violations = 0;
        for (std::size_t ti = 0; ti < res.types.size(); ++ti) {
            if (res.types[ti].counts[3] > 24) continue;
            ++checked;
            if (res.recovered[ti]) ++violations;
        }
        claim("i", "every source type with P(3) <= 2/3 errs", violations == 0,
              {{"types_checked", checked}, {"violations", violations}});
    }
    // (ii) identity on the source type class
    {
        const TypeLevelBest self = type_level_best(t_px, t_px, u);
        const Rational other = type_level_max_utility(t_px, t_third, u);
        bool recovered = false;
        for (std::size_t ti = 0; ti < res.types.size(); ++ti)
            if (res.types[ti] == t_px) recovered = res.recovered[ti];
        claim("ii", "the source type class is recovered with a unique diagonal maximizer",
              self.unique_diagonal && other < 0 && recovered,
              {{"own_class_max_utility", rational_to_string(self.max_utility)},
               {"other_class_max_utility", rational_to_string(other)},
               {"unique_diagonal", self.unique_diagonal}});
    }
    // (iii) the off-support type prefers the ballast class at utility 4
    {
        const Rational third = type_level_max_utility(t_hat, t_third, u);
        const Rational px_side = type_level_max_utility(t_hat, t_px, u);
        claim("iii",
              "for the type (1/3,1/3,0,1/3) the best class is the 1/3 class at utility 4",
              third == 4 && px_side < third,
              {{"max_utility_over_third_class", rational_to_string(third)},
               {"max_utility_over_source_class", rational_to_string(px_side)}});
    }
    // (iv) A is exactly the source class; its rate is log2(42840)/36
    {
        const BigInt expect_size = type_class_size(t_px);
        const double expect_rate = log2_bigint(expect_size) / 36.0;
        const bool pass = res.a_exact && res.a_lower_classes.size() == 1 &&
                          res.a_lower_classes[0] == t_px && res.a_lower_size == expect_size &&
                          res.rate_bits && std::abs(*res.rate_bits - expect_rate) <= 1e-9;
        claim("iv", "A equals the source type class with rate log2(42840)/36", pass,
              {{"a_exact", res.a_exact},
               {"a_size", res.a_lower_size.str()},
               {"expected_size", expect_size.str()},
               {"rate_bits", res.rate_bits ? real_to_string(*res.rate_bits) : "undefined"},
               {"expected_rate_bits", real_to_string(expect_rate)}});
    }
    // (v) the reachable image is at least the 1/3 class, putting its rate
    // beyond the log2(2.73) comparator
    {
        const BigInt third_size = type_class_size(t_third);
        const double third_rate = log2_bigint(third_size) / 36.0;
        const double comparator = std::log2(2.73);
        const bool ge = res.reachable_size >= third_size;
        const bool beyond = third_rate > comparator;
        claim("v",
              "reachable-image rate >= log2|U_{1/3}|/36 and that rate exceeds log2(2.73)",
              ge && beyond,
              {{"reachable_size", res.reachable_size.str()},
               {"third_class_size", third_size.str()},
               {"reachable_rate_bits", real_to_string(res.reachable_rate_bits)},
               {"third_class_rate_bits", real_to_string(third_rate)},
               {"comparator_log2_2.73", real_to_string(comparator)},
               {"size_inequality", ge},
               {"rate_exceeds_comparator", beyond}});
    }

    out["claims"] = claims;
    bool all = true;
    for (const auto& c : claims) all = all && c["pass"].get<bool>();
    out["pass"] = all;
    out["outcome"] = outcome_to_json(res, n);
    return out;
}

bool example3_claims_pass(const json& report) { return report.at("pass").get<bool>(); }

json suite_to_json(const SuiteResult& suite) {
    json out;
    out["suite"] = suite.suite;
    json checks = json::array();
    for (const auto& c : suite.checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(cj);
    }
    out["checks"] = checks;
    out["pass"] = suite.pass();
    return out;
}

}  // namespace stratcomm
