#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace lcsq {

/// Machine-readable outcome of one claim check at one degree.
struct VerificationReport {
    std::string claim;
    int n = 0;
    enum class Mode { exhaustive, sampled } mode = Mode::exhaustive;
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    std::string witness;  // case attaining the minimal slack
    double slack = 0.0;

    bool passed() const { return violations == 0; }

    nlohmann::json to_json() const {
        return {{"claim", claim},
                {"n", n},
                {"mode", mode == Mode::exhaustive ? "exhaustive" : "sampled"},
                {"cases", cases},
                {"violations", violations},
                {"witness", witness},
                {"slack", slack},
                {"passed", passed()}};
    }
};

}  // namespace lcsq
