#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynrisk/matrix.hpp"
#include "dynrisk/model.hpp"

namespace dynrisk {

/// Extrema of one index taken over every area and every period.
struct IndexExtrema {
    std::string id;
    double min_val = 0.0;
    double max_val = 0.0;
    std::optional<std::vector<double>> medians;  // per period, intermediate indices only
    std::optional<double> max_abs_dev;           // intermediate indices only
};

namespace detail {

inline double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

inline std::vector<IndexExtrema> compute_extrema(const AssessmentInput& input) {
    const std::size_t m = input.index_count();
    const std::size_t periods = input.period_count();
    std::vector<IndexExtrema> out(m);

    for (std::size_t j = 0; j < m; ++j) {
        auto& ex = out[j];
        ex.id = input.indices[j].id;
        ex.min_val = std::numeric_limits<double>::infinity();
        ex.max_val = -std::numeric_limits<double>::infinity();
        for (const auto& area : input.areas) {
            for (double a : area.values.row(j)) {
                ex.min_val = std::min(ex.min_val, a);
                ex.max_val = std::max(ex.max_val, a);
            }
        }

        if (input.indices[j].orientation.kind != OrientationKind::Intermediate) {
            continue;
        }
        std::vector<double> medians(periods);
        std::vector<double> column(input.area_count());
        for (std::size_t t = 0; t < periods; ++t) {
            for (std::size_t i = 0; i < input.area_count(); ++i) {
                column[i] = input.areas[i].values(j, t);
            }
            medians[t] = detail::median(column);
        }
        double dev = 0.0;
        for (const auto& area : input.areas) {
            for (std::size_t t = 0; t < periods; ++t) {
                dev = std::max(dev, std::abs(area.values(j, t) - medians[t]));
            }
        }
        ex.medians = std::move(medians);
        ex.max_abs_dev = dev;
    }
    return out;
}

/// Larger raw value, higher risk. A constant index maps to 0.5.
inline double standardize_benefit(double a, const IndexExtrema& ex) {
    const double range = ex.max_val - ex.min_val;
    if (range == 0.0) {
        return 0.5;
    }
    return (a - ex.min_val) / range;
}

/// Larger raw value, lower risk. A constant index maps to 0.5.
inline double standardize_cost(double a, const IndexExtrema& ex) {
    const double range = ex.max_val - ex.min_val;
    if (range == 0.0) {
        return 0.5;
    }
    return (ex.max_val - a) / range;
}

/// Closer to the period median, higher risk.
inline double standardize_intermediate(double a, std::size_t period, const IndexExtrema& ex) {
    if (!ex.medians || !ex.max_abs_dev) {
        throw std::invalid_argument("standardize_intermediate: extrema for '" + ex.id + "' carry no medians");
    }
    const double dev = *ex.max_abs_dev;
    if (dev == 0.0) {
        return 1.0;
    }
    return 1.0 - std::abs(a - ex.medians->at(period)) / dev;
}

/// Inside [low, high] is riskiest (1); risk falls off linearly outside.
inline double standardize_interval(double a, const IndexExtrema& ex, double low, double high) {
    if (a >= low && a <= high) {
        return 1.0;
    }
    const double den = std::max(low - ex.min_val, ex.max_val - high);
    if (den <= 0.0) {
        return 1.0;
    }
    if (a < low) {
        return 1.0 - (low - a) / den;
    }
    return 1.0 - (a - high) / den;
}

inline double standardize(double a, std::size_t period, const IndexOrientation& orientation,
                          const IndexExtrema& ex) {
    switch (orientation.kind) {
        case OrientationKind::Benefit:
            return standardize_benefit(a, ex);
        case OrientationKind::Cost:
            return standardize_cost(a, ex);
        case OrientationKind::Intermediate:
            return standardize_intermediate(a, period, ex);
        case OrientationKind::Interval:
            return standardize_interval(a, ex, orientation.interval_low.value(), orientation.interval_high.value());
    }
    return 0.0;
}

/// Standardized matrix B_i for every area, in input order.
inline std::vector<Matrix> standardize_all(const AssessmentInput& input) {
    const auto extrema = compute_extrema(input);
    std::vector<Matrix> out;
    out.reserve(input.area_count());
    for (const auto& area : input.areas) {
        Matrix b(area.values.rows(), area.values.cols());
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const auto& orientation = input.indices[j].orientation;
            for (std::size_t t = 0; t < b.cols(); ++t) {
                b(j, t) = standardize(area.values(j, t), t, orientation, extrema[j]);
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace dynrisk
