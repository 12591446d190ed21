#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynrisk/errors.hpp"

namespace dynrisk {

enum class RiskLevel { ExtremelyLow, Low, SlightlyLow, Medium, SlightlyHigh, High, ExtremelyHigh };

/// Comment set: upper threshold of each level, in level order.
inline constexpr std::array<double, 7> kLevelThresholds = {0.1, 0.2, 0.4, 0.6, 0.7, 0.8, 0.9};

inline constexpr std::array<std::string_view, 7> kLevelNames = {
    "extremely low risk", "low risk",  "slightly low risk",   "medium risk",
    "slightly high risk", "high risk", "extremely high risk",
};

constexpr std::string_view to_string(RiskLevel level) noexcept {
    return kLevelNames[static_cast<std::size_t>(level)];
}

/// Closed-form minimizer of H for one area:
///   s = g+^2 / (g+^2 + g-^2)
/// Throws DegenerateError when both degrees are zero.
inline double superiority_degree(double gamma_pos, double gamma_neg) {
    auto in_unit = [](double g) { return std::isfinite(g) && g >= 0.0 && g <= 1.0; };
    if (!in_unit(gamma_pos) || !in_unit(gamma_neg)) {
        throw std::invalid_argument("superiority_degree: incidence degrees must lie in [0, 1]");
    }
    const double p = gamma_pos * gamma_pos;
    const double q = gamma_neg * gamma_neg;
    if (p + q == 0.0) {
        throw DegenerateError("superiority", "both incidence degrees are zero; superiority is undefined");
    }
    return p / (p + q);
}

/// H(s) = sum_i [(1 - s_i) g+_i]^2 + (s_i g-_i)^2
inline double objective_H(std::span<const double> s, std::span<const double> gammas_pos,
                          std::span<const double> gammas_neg) {
    if (s.size() != gammas_pos.size() || s.size() != gammas_neg.size()) {
        throw std::invalid_argument("objective_H: length mismatch");
    }
    double h = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = (1.0 - s[i]) * gammas_pos[i];
        const double b = s[i] * gammas_neg[i];
        h += a * a + b * b;
    }
    return h;
}

/// Level whose threshold is the smallest one not below `s`; anything above
/// the last threshold is extremely high.
inline RiskLevel classify(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::out_of_range("classify: superiority " + std::to_string(s) + " outside [0, 1]");
    }
    for (std::size_t k = 0; k < kLevelThresholds.size(); ++k) {
        if (s <= kLevelThresholds[k]) {
            return static_cast<RiskLevel>(k);
        }
    }
    return RiskLevel::ExtremelyHigh;
}

struct ScoredArea {
    std::string name;
    double superiority = 0.0;
};

struct RankedArea {
    std::string name;
    double superiority = 0.0;
    int rank = 0;              // 1 = highest risk
    bool tied = false;         // shares its superiority with another area
    std::size_t input_index = 0;
};

/// Descending by superiority. Equal scores share the smaller rank
/// (1, 1, 3, ...) and keep their input order.
inline std::vector<RankedArea> rank_areas(std::span<const ScoredArea> scored) {
    std::vector<std::size_t> order(scored.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scored[a].superiority > scored[b].superiority;
    });

    std::vector<RankedArea> out;
    out.reserve(scored.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& src = scored[order[pos]];
        RankedArea r{src.name, src.superiority, static_cast<int>(pos) + 1, false, order[pos]};
        if (pos > 0 && out.back().superiority == r.superiority) {
            r.rank = out.back().rank;
            r.tied = true;
            out.back().tied = true;
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dynrisk
