#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace djc {

/// Qubit pairs: upper case atoms (A, B), lower case cavity modes (a, b).
enum class PairLabel { AB, ab, Aa, Bb, Ab, aB };

inline constexpr std::array<PairLabel, 6> kAllPairs{PairLabel::AB, PairLabel::ab, PairLabel::Aa,
                                                    PairLabel::Bb, PairLabel::Ab, PairLabel::aB};

/// Pairs that straddle the two sites.
inline constexpr std::array<PairLabel, 4> kNonlocalPairs{PairLabel::AB, PairLabel::ab,
                                                         PairLabel::Ab, PairLabel::aB};

constexpr std::string_view to_string(PairLabel p) {
    switch (p) {
        case PairLabel::AB: return "AB";
        case PairLabel::ab: return "ab";
        case PairLabel::Aa: return "Aa";
        case PairLabel::Bb: return "Bb";
        case PairLabel::Ab: return "Ab";
        case PairLabel::aB: return "aB";
    }
    return "?";
}

constexpr std::optional<PairLabel> parse_pair(std::string_view s) {
    for (PairLabel p : kAllPairs) {
        if (to_string(p) == s) return p;
    }
    // "Ba" is the same pair as "aB"
    if (s == "Ba") return PairLabel::aB;
    if (s == "bB") return PairLabel::Bb;
    return std::nullopt;
}

constexpr std::size_t index(PairLabel p) { return static_cast<std::size_t>(p); }

struct PairConcurrences {
    std::array<double, 6> values{};
    // Expression inside max{0, .} before clipping; equals `values` for pairs
    // whose closed form cannot go negative. Negative means separable with
    // margin, which separates genuine sudden death from tangential zeros.
    std::array<double, 6> unclipped{};

    double operator[](PairLabel p) const { return values[index(p)]; }
    double& operator[](PairLabel p) { return values[index(p)]; }

    /// Sum of squared nonlocal concurrences.
    double sspc() const {
        double s = 0.0;
        for (PairLabel p : kNonlocalPairs) s += values[index(p)] * values[index(p)];
        return s;
    }
};

}  // namespace djc
