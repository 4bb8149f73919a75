#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dode/machine.hpp"

namespace dode {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The property suites behind `selftest` and the acceptance runner.
/// Deterministic for a fixed seed.  `corrupt` is a test hook that
/// perturbs one frozen expected value so the harness can be seen to
/// fail.
std::vector<SuiteResult> run_suites(std::uint64_t seed, bool corrupt = false);

/// Renders one line per suite plus a summary; byte-stable per seed.
std::string format_report(const std::vector<SuiteResult>& results, std::uint64_t seed);

bool all_pass(const std::vector<SuiteResult>& results);

/// Fixture machines (also shipped as .tm files under tests/fixtures).
TMSpec fixture_identity();
TMSpec fixture_successor();
TMSpec fixture_scanner();
TMSpec fixture_const_half();
TMSpec fixture_const_five_half();

} // namespace dode
