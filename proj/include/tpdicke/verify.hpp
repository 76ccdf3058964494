// verify.hpp — self-test suite running the oracle cross-checks (symmetry,
// gradient, stationarity, mean-field equivalence, eigensolver and determinism
// invariants) without any external input.

#pragma once

#include <string>
#include <vector>

namespace tpdicke {
namespace verify {

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Check> run_all();

}  // namespace verify
}  // namespace tpdicke
