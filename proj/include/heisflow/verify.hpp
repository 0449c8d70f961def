#pragma once

#include "heisflow/builders.hpp"
#include "heisflow/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace heisflow {

/// One numeric check. `value` is the worst statistic observed and passes
/// when value <= tolerance (unless the check says otherwise in `detail`).
struct CheckResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const;
    /// True when every check of the given criterion passed (and there is one).
    bool criterion_passed(int criterion) const;
};

/// Random straight ruled surface spec over s in [-1, 1], v in [-0.5, 0.5]:
/// low-degree polynomial and trigonometric components, theta a quadratic
/// with a non-zero linear part. Not every draw is buildable; callers retry.
RuledSpec random_ruled_spec(Rng& rng);

/// Draws specs until one builds. `rejected` counts the failed draws.
RuledSpec random_buildable_ruled_spec(Rng& rng, int* rejected = nullptr);

/// Suites: "core" (10), "examples" (1, 2, 3, 6, 8, 9), "minimal" (4, 5, 7)
/// and "all". Throws UnknownName for anything else.
VerifyReport run_suite(std::string_view suite, std::uint64_t seed = 0);

/// The individual criteria, numbered as in the acceptance list.
std::vector<CheckResult> check_cylinder_curvature();
std::vector<CheckResult> check_cone_curvature();
std::vector<CheckResult> check_paraboloid();
std::vector<CheckResult> check_ruled_minimal(std::uint64_t seed);
std::vector<CheckResult> check_straight_leaves();
std::vector<CheckResult> check_oracle_agreement(std::uint64_t seed);
std::vector<CheckResult> check_ruled_form(std::uint64_t seed);
std::vector<CheckResult> check_contact_factors(std::uint64_t seed);
std::vector<CheckResult> check_circle_developable();
std::vector<CheckResult> check_core_invariants(std::uint64_t seed);

std::string report_to_json(const VerifyReport& r);

} // namespace heisflow
