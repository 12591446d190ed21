#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dynrisk/errors.hpp"
#include "dynrisk/matrix.hpp"

namespace dynrisk {

// ============================================================================
// Index orientation
// ============================================================================

enum class OrientationKind { Benefit, Cost, Intermediate, Interval };

inline constexpr std::array<std::string_view, 4> kOrientationNames = {"benefit", "cost", "intermediate",
                                                                      "interval"};

constexpr std::string_view to_string(OrientationKind kind) noexcept {
    return kOrientationNames[static_cast<std::size_t>(kind)];
}

inline std::optional<OrientationKind> parse_orientation_kind(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kOrientationNames.size(); ++i) {
        if (kOrientationNames[i] == text) {
            return static_cast<OrientationKind>(i);
        }
    }
    return std::nullopt;
}

/// How raw scores of an index map to risk. Benefit: larger is riskier.
/// Cost: larger is safer. Intermediate: closer to the per-period median is
/// riskier. Interval: inside [low, high] is riskiest.
struct IndexOrientation {
    OrientationKind kind = OrientationKind::Benefit;
    std::optional<double> interval_low;   // only for Interval
    std::optional<double> interval_high;  // only for Interval

    static IndexOrientation benefit() { return {OrientationKind::Benefit, {}, {}}; }
    static IndexOrientation cost() { return {OrientationKind::Cost, {}, {}}; }
    static IndexOrientation intermediate() { return {OrientationKind::Intermediate, {}, {}}; }
    static IndexOrientation interval(double low, double high) { return {OrientationKind::Interval, low, high}; }

    friend bool operator==(const IndexOrientation&, const IndexOrientation&) = default;
};

struct IndexDefinition {
    std::string id;
    std::string name;
    IndexOrientation orientation;
    double weight = 0.0;

    friend bool operator==(const IndexDefinition&, const IndexDefinition&) = default;
};

/// Raw scores of one assessed area: rows are indices, columns are periods.
struct AreaSeries {
    std::string name;
    Matrix values;

    friend bool operator==(const AreaSeries&, const AreaSeries&) = default;
};

struct AssessmentInput {
    std::vector<IndexDefinition> indices;
    std::vector<std::string> periods;
    std::vector<double> time_weights;
    std::vector<AreaSeries> areas;

    [[nodiscard]] std::size_t index_count() const noexcept { return indices.size(); }
    [[nodiscard]] std::size_t period_count() const noexcept { return periods.size(); }
    [[nodiscard]] std::size_t area_count() const noexcept { return areas.size(); }

    [[nodiscard]] std::vector<double> index_weights() const {
        std::vector<double> w;
        w.reserve(indices.size());
        for (const auto& idx : indices) {
            w.push_back(idx.weight);
        }
        return w;
    }

    friend bool operator==(const AssessmentInput&, const AssessmentInput&) = default;
};

// ============================================================================
// Validation
// ============================================================================

inline constexpr double kWeightSumTolerance = 1e-2;

namespace detail {

// At least two decimals, up to four, trailing zeros trimmed.
inline std::string format_sum(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s = buf;
    auto dot = s.find('.');
    while (s.size() > dot + 3 && s.back() == '0') {
        s.pop_back();
    }
    return s;
}

}  // namespace detail

/// Every invariant violation in `input`; empty when the input is valid.
inline std::vector<std::string> find_input_issues(const AssessmentInput& input) {
    std::vector<std::string> issues;
    const std::size_t m = input.index_count();
    const std::size_t periods = input.period_count();

    if (m < 2) {
        issues.push_back("m >= 2 required (got " + std::to_string(m) + " indices)");
    }
    if (periods < 2) {
        issues.push_back("T >= 2 required (got " + std::to_string(periods) + " periods)");
    }
    if (input.area_count() < 2) {
        issues.push_back("n >= 2 required (got " + std::to_string(input.area_count()) + " areas)");
    }

    std::set<std::string> seen_ids;
    for (std::size_t j = 0; j < m; ++j) {
        const auto& idx = input.indices[j];
        const std::string where = "index " + std::to_string(j + 1) + " '" + idx.id + "'";
        if (idx.id.empty()) {
            issues.push_back(where + ": empty id");
        } else if (!seen_ids.insert(idx.id).second) {
            issues.push_back(where + ": duplicate index id");
        }
        if (!std::isfinite(idx.weight) || idx.weight <= 0.0 || idx.weight > 1.0) {
            issues.push_back(where + ": weight " + std::to_string(idx.weight) + " outside (0, 1]");
        }
        const auto& o = idx.orientation;
        if (o.kind == OrientationKind::Interval) {
            if (!o.interval_low || !o.interval_high) {
                issues.push_back(where + ": interval orientation missing bounds");
            } else if (!std::isfinite(*o.interval_low) || !std::isfinite(*o.interval_high)) {
                issues.push_back(where + ": interval bounds must be finite");
            } else if (*o.interval_low > *o.interval_high) {
                issues.push_back(where + ": interval low bound exceeds high bound");
            }
        } else if (o.interval_low || o.interval_high) {
            issues.push_back(where + ": only interval orientation may carry bounds");
        }
    }

    if (input.time_weights.size() != periods) {
        issues.push_back("time weights: " + std::to_string(input.time_weights.size()) + " given for " +
                         std::to_string(periods) + " periods");
    }
    for (std::size_t t = 0; t < input.time_weights.size(); ++t) {
        double w = input.time_weights[t];
        if (!std::isfinite(w) || w <= 0.0 || w > 1.0) {
            issues.push_back("time weight " + std::to_string(t + 1) + ": " + std::to_string(w) +
                             " outside (0, 1]");
        }
    }

    if (m > 0) {
        auto lambda = input.index_weights();
        double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
            issues.push_back("index weights sum " + detail::format_sum(sum) + " outside tolerance");
        }
    }
    if (!input.time_weights.empty()) {
        double sum = std::accumulate(input.time_weights.begin(), input.time_weights.end(), 0.0);
        if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
            issues.push_back("time weights sum " + detail::format_sum(sum) + " outside tolerance");
        }
    }

    for (std::size_t i = 0; i < input.area_count(); ++i) {
        const auto& area = input.areas[i];
        const std::string where = "area " + std::to_string(i + 1) + " '" + area.name + "'";
        if (area.values.rows() != m || area.values.cols() != periods) {
            issues.push_back(where + ": values are " + shape_string(area.values) + ", expected " +
                             shape_string(m, periods) + " (m indices x T=" + std::to_string(periods) +
                             " periods)");
            continue;
        }
        std::size_t bad = 0;
        for (double v : area.values.values()) {
            bad += std::isfinite(v) ? 0 : 1;
        }
        if (bad > 0) {
            issues.push_back(where + ": " + std::to_string(bad) + " non-finite entries");
        }
    }
    return issues;
}

/// Returns `input` unchanged when valid, otherwise throws ValidationError
/// listing every violation.
inline AssessmentInput validate_input(AssessmentInput input) {
    auto issues = find_input_issues(input);
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
    return input;
}

/// Index and time weights as used downstream, plus the raw sums for the
/// config echo.
struct ResolvedWeights {
    std::vector<double> index;
    std::vector<double> time;
    double index_sum = 0.0;
    double time_sum = 0.0;
    bool renormalized = false;
};

inline ResolvedWeights resolve_weights(const AssessmentInput& input, bool renormalize) {
    ResolvedWeights out;
    out.index = input.index_weights();
    out.time = input.time_weights;
    out.index_sum = std::accumulate(out.index.begin(), out.index.end(), 0.0);
    out.time_sum = std::accumulate(out.time.begin(), out.time.end(), 0.0);
    if (renormalize) {
        for (double& w : out.index) w /= out.index_sum;
        for (double& w : out.time) w /= out.time_sum;
        out.renormalized = true;
    }
    return out;
}

// ============================================================================
// Default index schema for fire occurrence risk in the wildland-urban interface
// ============================================================================

/// The 15 secondary indices of the WUI fire-risk index system, in order. All are benefit
/// oriented (a higher expert score means higher risk); weights are the
/// reference index weights and sum to 0.9999.
inline std::vector<IndexDefinition> default_wui_schema() {
    struct Row {
        const char* id;
        const char* name;
        double weight;
    };
    static constexpr std::array<Row, 15> rows = {{
        {"fuel_load", "the Fuel Load in the WUI", 0.1458},
        {"fuel_moisture", "Moisture Content of Combustible Materials in the WUI", 0.1303},
        {"fuel_distribution", "Spatial Distribution of Combustible Materials in the WUI", 0.1114},
        {"production_fire_spread",
         "Uncontrolled Fire Spread in Agricultural, Forestry, and Livestock Production Regions", 0.0666},
        {"domestic_fire_use", "Domestic Fire Use in Daily Life", 0.0612},
        {"population_density", "Population Density Distribution", 0.0585},
        {"road_density", "Road Network Density", 0.0559},
        {"precipitation", "Precipitation Levels", 0.0650},
        {"relative_humidity", "Relative Humidity", 0.0542},
        {"air_temperature", "Air Temperature", 0.0451},
        {"wind_velocity", "Wind Velocity", 0.0376},
        {"slope_gradient", "Slope Gradient", 0.0450},
        {"slope_aspect", "Slope Aspect", 0.0430},
        {"topographic_position", "Topographic Position", 0.0411},
        {"elevation", "Elevation Above Sea Level", 0.0392},
    }};
    std::vector<IndexDefinition> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({r.id, r.name, IndexOrientation::benefit(), r.weight});
    }
    return out;
}

}  // namespace dynrisk
