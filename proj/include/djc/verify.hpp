#pragma once

// Runtime invariant suite behind the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

namespace djc {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

std::vector<CheckResult> run_verification(std::uint64_t seed = 0x5eed2026ULL);

}  // namespace djc
