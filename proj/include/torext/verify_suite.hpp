#pragma once

#include <functional>
#include <string>

#include "torext/tor_module.hpp"

namespace torext {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    bool include_stretch = false;
    bool stretch_only = false;
};

// Fixture-backed verification checks; each returns one result line.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts = {});

std::string verification_json(const std::vector<CheckResult>& results);

}  // namespace torext
