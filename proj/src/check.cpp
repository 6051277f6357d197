#include "zitterlab/check.hpp"

#include <cmath>
#include <limits>

namespace zitterlab {

double max_deviation(const CheckResult& check) {
    if (check.measured.size() != check.expected.size() || check.measured.empty())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < check.measured.size(); ++i) {
        const double d = std::abs(check.measured[i] - check.expected[i]);
        if (std::isnan(d)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, d);
    }
    return worst;
}

CheckResult make_check(std::string name, std::string paper_ref, std::vector<double> measured,
                       std::vector<double> expected, double tolerance, std::string detail) {
    CheckResult r{std::move(name), std::move(paper_ref), std::move(measured), std::move(expected),
                  tolerance,       false,                std::move(detail)};
    r.passed = max_deviation(r) <= tolerance;
    return r;
}

nlohmann::json to_json(const CheckResult& check) {
    nlohmann::json j{
        {"name", check.name},
        {"paper_ref", check.paper_ref},
        {"measured", check.measured},
        {"expected", check.expected},
        {"tolerance", check.tolerance},
        {"status", check.passed ? "pass" : "fail"},
    };
    if (!check.detail.empty()) j["detail"] = check.detail;
    return j;
}

}  // namespace zitterlab
