#pragma once

#include <string>
#include <vector>

namespace stratcomm {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Property batteries behind `verify` and the acceptance suite. Each runs a
// fixed, seeded battery and reports one line per checked fact.
SuiteResult verify_theorem1(int threads = 1);
SuiteResult verify_independent_set(int threads = 1);
SuiteResult verify_biregular(int threads = 1);
SuiteResult verify_engine_equiv(int threads = 1);
SuiteResult verify_time_share(int threads = 1);
SuiteResult verify_dbar_anchors(int threads = 1);
SuiteResult verify_lemma_binary_decomp(int threads = 1);
SuiteResult verify_no_positive_cycle(int threads = 1);

std::vector<std::string> verify_suite_names();
SuiteResult run_verify_suite(const std::string& name, int threads = 1);

}  // namespace stratcomm
