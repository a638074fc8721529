#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace canonica {

struct CheckResult {
    std::string check_id;
    int criterion = 0;
    nlohmann::json params = nlohmann::json::object();
    double max_abs = 0.0;
    std::optional<double> l2;
    std::optional<double> observed_order;
    double tolerance = 0.0;
    bool pass = false;

    nlohmann::json to_json() const;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
};

// matrix, pairs, group, eigen, residual, numeric, transforms, algebra, genfun, all
const std::vector<std::string>& suite_names();
// Suite covering one acceptance criterion (1..9).
std::string suite_for_criterion(int criterion);
SuiteReport run_suite(const std::string& name);

}  // namespace canonica
