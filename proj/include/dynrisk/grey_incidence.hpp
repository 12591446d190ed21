#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynrisk/matrix.hpp"

namespace dynrisk {

// ============================================================================
// Volumetric grey incidence between a reference matrix and a family of
// behavior matrices.
//
//   zeroing image  ->  local volume D (one cell per 2x2 window)
//   |D_ref - D_k|  ->  volume difference D^{0k}
//   (d_max - d) / (d_max - d_min)  ->  coefficient matrix G^{(k)}
//   mean(G^{(k)})  ->  incidence degree gamma_k in [0, 1]
// ============================================================================

/// Re-basing applied to a behavior matrix before its volume is taken.
enum class ZeroingMode {
    FirstColumn,   // c[j][t] - c[j][0]: each row re-based at its first period
    FirstElement,  // c[j][t] - c[0][0]
    None,
};

inline constexpr std::array<std::string_view, 3> kZeroingModeNames = {"first-column", "first-element", "none"};

constexpr std::string_view to_string(ZeroingMode mode) noexcept {
    return kZeroingModeNames[static_cast<std::size_t>(mode)];
}

inline std::optional<ZeroingMode> parse_zeroing_mode(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kZeroingModeNames.size(); ++i) {
        if (kZeroingModeNames[i] == text) {
            return static_cast<ZeroingMode>(i);
        }
    }
    return std::nullopt;
}

template <std::floating_point T>
BasicMatrix<T> zeroing_image(const BasicMatrix<T>& c, ZeroingMode mode) {
    BasicMatrix<T> out = c;
    if (c.empty()) {
        return out;
    }
    switch (mode) {
        case ZeroingMode::FirstColumn:
            for (std::size_t j = 0; j < out.rows(); ++j) {
                const T base = c(j, 0);
                for (T& v : out.row(j)) v -= base;
            }
            break;
        case ZeroingMode::FirstElement: {
            const T base = c(0, 0);
            for (T& v : out.values()) v -= base;
            break;
        }
        case ZeroingMode::None:
            break;
    }
    return out;
}

/// Signed volume under the surface through each 2x2 window, split into two
/// triangles along the window's anti-diagonal:
///   d = (c[j][t] + c[j+1][t+1]) / 6 + (c[j+1][t] + c[j][t+1]) / 3
template <std::floating_point T>
BasicMatrix<T> local_volume(const BasicMatrix<T>& zeroed) {
    if (zeroed.rows() < 2 || zeroed.cols() < 2) {
        throw std::invalid_argument("local_volume: need at least 2x2, got " + shape_string(zeroed));
    }
    BasicMatrix<T> d(zeroed.rows() - 1, zeroed.cols() - 1);
    for (std::size_t j = 0; j < d.rows(); ++j) {
        for (std::size_t t = 0; t < d.cols(); ++t) {
            d(j, t) = (zeroed(j, t) + zeroed(j + 1, t + 1)) / T{6} + (zeroed(j + 1, t) + zeroed(j, t + 1)) / T{3};
        }
    }
    return d;
}

template <std::floating_point T>
BasicMatrix<T> volume_difference(const BasicMatrix<T>& reference_volume, const BasicMatrix<T>& factor_volume) {
    if (!reference_volume.same_shape(factor_volume)) {
        throw std::invalid_argument("volume_difference: shapes " + shape_string(reference_volume) + " and " +
                                    shape_string(factor_volume) + " differ");
    }
    BasicMatrix<T> out(reference_volume.rows(), reference_volume.cols());
    auto a = reference_volume.values();
    auto b = factor_volume.values();
    auto o = out.values();
    for (std::size_t e = 0; e < o.size(); ++e) {
        o[e] = std::abs(a[e] - b[e]);
    }
    return out;
}

template <std::floating_point T>
struct IncidenceFamilyResult {
    std::string reference_label;
    BasicMatrix<T> reference_volume;
    std::vector<BasicMatrix<T>> factor_volumes;
    std::vector<BasicMatrix<T>> differences;   // D^{0k}
    T d_max{};
    T d_min{};
    std::vector<BasicMatrix<T>> coefficients;  // G^{(k)}
    std::vector<T> degrees;                    // gamma(C^{(0)}, C^{(k)})
};

/// Coefficient matrix for one difference matrix against the family-wide
/// extremes. When d_max == 0 or d_max == d_min nothing discriminates and
/// every coefficient is 1.
template <std::floating_point T>
BasicMatrix<T> incidence_coefficients(const BasicMatrix<T>& difference, T d_max, T d_min) {
    BasicMatrix<T> g(difference.rows(), difference.cols(), T{1});
    const T span = d_max - d_min;
    if (d_max == T{0} || span == T{0}) {
        return g;
    }
    auto d = difference.values();
    auto out = g.values();
    for (std::size_t e = 0; e < out.size(); ++e) {
        out[e] = (d_max - d[e]) / span;
    }
    return g;
}

/// Mean coefficient; the divisor is the (m-1)(T-1) cell count.
template <std::floating_point T>
T incidence_degree(const BasicMatrix<T>& coefficients) {
    if (coefficients.empty()) {
        throw std::invalid_argument("incidence_degree: empty coefficient matrix");
    }
    T sum{0};
    for (T g : coefficients.values()) sum += g;
    return sum / static_cast<T>(coefficients.size());
}

/// Incidence of every factor against one reference. d_max and d_min are
/// taken jointly over all factors of this family.
template <std::floating_point T>
IncidenceFamilyResult<T> incidence_family(const BasicMatrix<T>& reference, std::span<const BasicMatrix<T>> factors,
                                          ZeroingMode mode, std::string reference_label = {}) {
    if (factors.empty()) {
        throw std::invalid_argument("incidence_family: empty factor list");
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (!factors[k].same_shape(reference)) {
            throw std::invalid_argument("incidence_family: factor " + std::to_string(k) + " is " +
                                        shape_string(factors[k]) + ", reference is " + shape_string(reference));
        }
    }

    IncidenceFamilyResult<T> r;
    r.reference_label = std::move(reference_label);
    r.reference_volume = local_volume(zeroing_image(reference, mode));
    r.factor_volumes.reserve(factors.size());
    r.differences.reserve(factors.size());
    r.d_max = -std::numeric_limits<T>::infinity();
    r.d_min = std::numeric_limits<T>::infinity();
    for (const auto& f : factors) {
        r.factor_volumes.push_back(local_volume(zeroing_image(f, mode)));
        r.differences.push_back(volume_difference(r.reference_volume, r.factor_volumes.back()));
        r.d_max = std::max(r.d_max, r.differences.back().max_value());
        r.d_min = std::min(r.d_min, r.differences.back().min_value());
    }

    r.coefficients.reserve(factors.size());
    r.degrees.reserve(factors.size());
    for (const auto& diff : r.differences) {
        r.coefficients.push_back(incidence_coefficients(diff, r.d_max, r.d_min));
        r.degrees.push_back(incidence_degree(r.coefficients.back()));
    }
    return r;
}

}  // namespace dynrisk
