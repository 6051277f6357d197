#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace zitterlab {

/// One verification outcome. `passed` holds iff every |measured - expected|
/// is within `tolerance`; construct through make_check to keep that true.
struct CheckResult {
    std::string name;
    std::string paper_ref;
    std::vector<double> measured;
    std::vector<double> expected;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

CheckResult make_check(std::string name, std::string paper_ref, std::vector<double> measured,
                       std::vector<double> expected, double tolerance, std::string detail = {});

/// Largest |measured - expected| (infinity on length mismatch or NaN).
double max_deviation(const CheckResult& check);

nlohmann::json to_json(const CheckResult& check);

}  // namespace zitterlab
