#ifndef AMBIENTKIT_ACCEPTANCE_HPP
#define AMBIENTKIT_ACCEPTANCE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ambientkit/serialize.hpp"

namespace ambientkit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    Json data = Json::object();
    double milliseconds = 0;
};

inline constexpr int kCriterionCount = 12;

/// Runs one criterion (1..12). Throws InvalidSpec for an unknown id.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// The k = 1, p = 1 commutator check that every other check depends on.
bool sign_convention_gate();

/// Runs the gate, then every criterion in order, calling `on_result` after
/// each. A failing gate marks all criteria failed without running them.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// Consolidated document: stable section plus a separate "timings_ms".
Json acceptance_report(const std::vector<CriterionResult>& results, std::uint64_t seed);

} // namespace ambientkit

#endif
