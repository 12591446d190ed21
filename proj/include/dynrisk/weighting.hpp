#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <stdexcept>
#include <string>

#include "dynrisk/matrix.hpp"

namespace dynrisk {

/// C[j][t] = index_weights[j] * B[j][t] * time_weights[t].
template <std::floating_point T>
BasicMatrix<T> apply_weights(const BasicMatrix<T>& standardized, std::span<const T> index_weights,
                             std::span<const T> time_weights) {
    if (index_weights.size() != standardized.rows() || time_weights.size() != standardized.cols()) {
        throw std::invalid_argument("apply_weights: weights " + shape_string(index_weights.size(), time_weights.size()) +
                                    " do not match matrix " + shape_string(standardized));
    }
    BasicMatrix<T> out(standardized.rows(), standardized.cols());
    for (std::size_t j = 0; j < out.rows(); ++j) {
        for (std::size_t t = 0; t < out.cols(); ++t) {
            out(j, t) = index_weights[j] * standardized(j, t) * time_weights[t];
        }
    }
    return out;
}

namespace detail {

template <std::floating_point T, typename Pick>
BasicMatrix<T> elementwise_reduce(std::span<const BasicMatrix<T>> matrices, const char* what, Pick pick) {
    if (matrices.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty matrix list");
    }
    BasicMatrix<T> out = matrices.front();
    for (std::size_t k = 1; k < matrices.size(); ++k) {
        const auto& m = matrices[k];
        if (!m.same_shape(out)) {
            throw std::invalid_argument(std::string(what) + ": matrix " + std::to_string(k) + " is " +
                                        shape_string(m) + ", expected " + shape_string(out));
        }
        auto dst = out.values();
        auto src = m.values();
        for (std::size_t e = 0; e < dst.size(); ++e) {
            dst[e] = pick(dst[e], src[e]);
        }
    }
    return out;
}

}  // namespace detail

/// Elementwise maximum over all areas' weighted matrices (riskiest profile).
template <std::floating_point T>
BasicMatrix<T> positive_ideal(std::span<const BasicMatrix<T>> weighted) {
    return detail::elementwise_reduce<T>(weighted, "positive_ideal", [](T a, T b) { return std::max(a, b); });
}

/// Elementwise minimum over all areas' weighted matrices (safest profile).
template <std::floating_point T>
BasicMatrix<T> negative_ideal(std::span<const BasicMatrix<T>> weighted) {
    return detail::elementwise_reduce<T>(weighted, "negative_ideal", [](T a, T b) { return std::min(a, b); });
}

}  // namespace dynrisk
