#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynrisk/errors.hpp"
#include "dynrisk/grey_incidence.hpp"
#include "dynrisk/model.hpp"
#include "dynrisk/normalization.hpp"
#include "dynrisk/ranking.hpp"
#include "dynrisk/weighting.hpp"

namespace dynrisk {

inline constexpr std::string_view kVersion = "1.0.0";

enum class OutputFormat { Text, Json, Csv };

inline constexpr std::array<std::string_view, 3> kOutputFormatNames = {"text", "json", "csv"};

constexpr std::string_view to_string(OutputFormat f) noexcept { return kOutputFormatNames[static_cast<std::size_t>(f)]; }

inline std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
    for (std::size_t i = 0; i < kOutputFormatNames.size(); ++i) {
        if (kOutputFormatNames[i] == text) return static_cast<OutputFormat>(i);
    }
    return std::nullopt;
}

struct RunConfig {
    ZeroingMode zeroing_mode = ZeroingMode::FirstColumn;
    bool renormalize_weights = true;
    int report_decimals = 2;  // [0, 12]
    bool emit_trace = false;
    OutputFormat output_format = OutputFormat::Text;
};

/// Every intermediate matrix of one run, areas in input order.
struct StageMatrices {
    std::vector<Matrix> standardized;     // B_i
    std::vector<Matrix> weighted;         // C_i
    Matrix positive_ideal;                // C+
    Matrix negative_ideal;                // C-
    std::vector<Matrix> area_volumes;     // D_i
    Matrix positive_volume;               // D+
    Matrix negative_volume;               // D-
    std::vector<Matrix> volume_diff_pos;  // |D+ - D_i|
    std::vector<Matrix> volume_diff_neg;  // |D- - D_i|
    std::vector<Matrix> coeff_pos;        // G(i)+
    std::vector<Matrix> coeff_neg;        // G(i)-
    double d_max_pos = 0.0, d_min_pos = 0.0;
    double d_max_neg = 0.0, d_min_neg = 0.0;
};

struct AreaResult {
    std::string name;
    double gamma_pos = 0.0;
    double gamma_neg = 0.0;
    double superiority = 0.0;
    int rank = 0;
    bool tied = false;
    RiskLevel level = RiskLevel::Medium;
};

struct ConfigEcho {
    ZeroingMode zeroing_mode = ZeroingMode::FirstColumn;
    bool renormalize_weights = true;
    bool weights_renormalized = false;
    double index_weight_sum = 0.0;
    double time_weight_sum = 0.0;
    int report_decimals = 2;
    OutputFormat output_format = OutputFormat::Text;
    bool emit_trace = false;
};

struct AssessmentResult {
    std::vector<AreaResult> areas;  // input order
    ConfigEcho config;
    std::optional<StageMatrices> trace;

    /// Areas sorted by rank; ties keep input order.
    [[nodiscard]] std::vector<AreaResult> ranked() const {
        std::vector<AreaResult> out = areas;
        std::stable_sort(out.begin(), out.end(), [](const AreaResult& a, const AreaResult& b) { return a.rank < b.rank; });
        return out;
    }
};

struct AssessmentReport {
    AssessmentResult result;
    std::string dataset_fingerprint;
    std::string tool_version{kVersion};
    double duration_ms = 0.0;
    // Labels carried for report and trace emission.
    std::vector<std::string> index_ids;
    std::vector<std::string> period_labels;
};

// ============================================================================
// Dataset fingerprint: FNV-1a 64 over the input's content.
// ============================================================================

class Fnv1a64 {
public:
    void bytes(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 1099511628211ULL;
        }
    }
    void text(std::string_view s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    void u64(std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            auto b = static_cast<unsigned char>(v >> (8 * k));
            bytes(&b, 1);
        }
    }
    void real(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    [[nodiscard]] std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 14695981039346656037ULL;
};

inline std::string fingerprint(const AssessmentInput& input) {
    Fnv1a64 h;
    h.u64(input.indices.size());
    for (const auto& idx : input.indices) {
        h.text(idx.id);
        h.text(idx.name);
        h.u64(static_cast<std::uint64_t>(idx.orientation.kind));
        h.real(idx.orientation.interval_low.value_or(0.0));
        h.real(idx.orientation.interval_high.value_or(0.0));
        h.real(idx.weight);
    }
    h.u64(input.periods.size());
    for (std::size_t t = 0; t < input.periods.size(); ++t) {
        h.text(input.periods[t]);
        h.real(t < input.time_weights.size() ? input.time_weights[t] : 0.0);
    }
    h.u64(input.areas.size());
    for (const auto& area : input.areas) {
        h.text(area.name);
        h.u64(area.values.rows());
        h.u64(area.values.cols());
        for (double v : area.values.values()) h.real(v);
    }
    return h.hex();
}

// ============================================================================
// End-to-end procedure
// ============================================================================

/// Standardize, weight, build ideal matrices, take volumetric incidence
/// against both ideals, solve superiority, rank and classify.
inline AssessmentReport run_assessment(const AssessmentInput& raw, const RunConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    if (config.report_decimals < 0 || config.report_decimals > 12) {
        throw std::invalid_argument("report_decimals must lie in [0, 12]");
    }
    const AssessmentInput input = validate_input(raw);
    const std::size_t n = input.area_count();

    const ResolvedWeights weights = resolve_weights(input, config.renormalize_weights);

    StageMatrices st;
    st.standardized = standardize_all(input);
    st.weighted.reserve(n);
    for (const auto& b : st.standardized) {
        st.weighted.push_back(apply_weights<double>(b, weights.index, weights.time));
    }
    st.positive_ideal = positive_ideal<double>(st.weighted);
    st.negative_ideal = negative_ideal<double>(st.weighted);

    auto pos = incidence_family<double>(st.positive_ideal, st.weighted, config.zeroing_mode, "C+");
    auto neg = incidence_family<double>(st.negative_ideal, st.weighted, config.zeroing_mode, "C-");

    std::vector<ScoredArea> scored;
    scored.reserve(n);
    AssessmentResult result;
    result.areas.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& a = result.areas[i];
        a.name = input.areas[i].name;
        a.gamma_pos = pos.degrees[i];
        a.gamma_neg = neg.degrees[i];
        try {
            a.superiority = superiority_degree(a.gamma_pos, a.gamma_neg);
        } catch (const DegenerateError&) {
            throw DegenerateError("superiority", "area '" + a.name +
                                                     "': both incidence degrees are zero; superiority is undefined");
        }
        a.level = classify(a.superiority);
        scored.push_back({a.name, a.superiority});
    }
    for (const auto& r : rank_areas(scored)) {
        result.areas[r.input_index].rank = r.rank;
        result.areas[r.input_index].tied = r.tied;
    }

    result.config = {config.zeroing_mode, config.renormalize_weights, weights.renormalized, weights.index_sum,
                     weights.time_sum,    config.report_decimals,     config.output_format, config.emit_trace};

    if (config.emit_trace) {
        st.area_volumes = std::move(pos.factor_volumes);
        st.positive_volume = std::move(pos.reference_volume);
        st.negative_volume = std::move(neg.reference_volume);
        st.volume_diff_pos = std::move(pos.differences);
        st.volume_diff_neg = std::move(neg.differences);
        st.coeff_pos = std::move(pos.coefficients);
        st.coeff_neg = std::move(neg.coefficients);
        st.d_max_pos = pos.d_max;
        st.d_min_pos = pos.d_min;
        st.d_max_neg = neg.d_max;
        st.d_min_neg = neg.d_min;
        result.trace = std::move(st);
    }

    AssessmentReport report;
    report.result = std::move(result);
    report.dataset_fingerprint = fingerprint(input);
    for (const auto& idx : input.indices) report.index_ids.push_back(idx.id);
    report.period_labels = input.periods;
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace dynrisk
