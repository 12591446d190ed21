#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynrisk/errors.hpp"
#include "dynrisk/pipeline.hpp"

namespace dynrisk {

namespace detail {

inline std::string fixed(double v, int decimals) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(decimals) << v;
    return ss.str();
}

inline std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline nlohmann::json config_to_json(const ConfigEcho& c) {
    return {{"zeroing_mode", to_string(c.zeroing_mode)},
            {"renormalize_weights", c.renormalize_weights},
            {"weights_renormalized", c.weights_renormalized},
            {"index_weight_sum", c.index_weight_sum},
            {"time_weight_sum", c.time_weight_sum},
            {"report_decimals", c.report_decimals},
            {"output_format", to_string(c.output_format)},
            {"emit_trace", c.emit_trace}};
}

/// Full-precision report. Areas appear in rank order.
inline nlohmann::json report_to_json(const AssessmentReport& report) {
    nlohmann::json doc;
    doc["tool_version"] = report.tool_version;
    doc["dataset_fingerprint"] = report.dataset_fingerprint;
    doc["duration_ms"] = report.duration_ms;
    doc["config"] = config_to_json(report.result.config);
    doc["areas"] = nlohmann::json::array();
    for (const auto& a : report.result.ranked()) {
        doc["areas"].push_back({{"name", a.name},
                                {"gamma_pos", a.gamma_pos},
                                {"gamma_neg", a.gamma_neg},
                                {"superiority", a.superiority},
                                {"rank", a.rank},
                                {"tied", a.tied},
                                {"level", to_string(a.level)}});
    }
    return doc;
}

inline void write_text_report(std::ostream& out, const AssessmentReport& report, int decimals) {
    const auto& cfg = report.result.config;
    out << "dynrisk " << report.tool_version << "  dataset " << report.dataset_fingerprint << "\n";
    out << "zeroing: " << to_string(cfg.zeroing_mode) << "  weights: "
        << (cfg.weights_renormalized ? "renormalized" : "as given") << " (index sum "
        << detail::fixed(cfg.index_weight_sum, 4) << ", time sum " << detail::fixed(cfg.time_weight_sum, 4)
        << ")\n\n";

    const auto ranked = report.result.ranked();
    std::size_t name_width = 4;
    for (const auto& a : ranked) name_width = std::max(name_width, a.name.size());
    const int num_width = std::max(7, decimals + 3);

    out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(name_width) + 2) << "area"
        << std::right << std::setw(num_width) << "gamma+" << std::setw(num_width) << "gamma-"
        << std::setw(num_width) << "s" << "  level\n";
    for (const auto& a : ranked) {
        std::string rank = std::to_string(a.rank) + (a.tied ? "=" : "");
        out << std::left << std::setw(6) << rank << std::setw(static_cast<int>(name_width) + 2) << a.name
            << std::right << std::setw(num_width) << detail::fixed(a.gamma_pos, decimals) << std::setw(num_width)
            << detail::fixed(a.gamma_neg, decimals) << std::setw(num_width)
            << detail::fixed(a.superiority, decimals) << "  " << to_string(a.level) << "\n";
    }
    bool any_tie = false;
    for (const auto& a : ranked) any_tie = any_tie || a.tied;
    if (any_tie) {
        out << "\n'=' marks areas tied on superiority.\n";
    }
}

inline void write_csv_report(std::ostream& out, const AssessmentReport& report) {
    out << "rank,name,gamma_pos,gamma_neg,superiority,level,tied\n";
    for (const auto& a : report.result.ranked()) {
        out << a.rank << ',' << detail::csv_field(a.name) << ',' << detail::full_precision(a.gamma_pos) << ','
            << detail::full_precision(a.gamma_neg) << ',' << detail::full_precision(a.superiority) << ','
            << detail::csv_field(to_string(a.level)) << ',' << (a.tied ? "true" : "false") << '\n';
    }
}

inline void write_report(std::ostream& out, const AssessmentReport& report, const RunConfig& config) {
    switch (config.output_format) {
        case OutputFormat::Text:
            write_text_report(out, report, config.report_decimals);
            break;
        case OutputFormat::Json:
            out << report_to_json(report).dump(2) << '\n';
            break;
        case OutputFormat::Csv:
            write_csv_report(out, report);
            break;
    }
}

/// Writes the report to `destination`, or to stdout when it is empty or "-".
inline void emit_report(const AssessmentReport& report, const RunConfig& config,
                        const std::filesystem::path& destination = {}) {
    if (destination.empty() || destination == "-") {
        write_report(std::cout, report, config);
        std::cout.flush();
        return;
    }
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write report to '" + destination.string() + "'");
    }
    write_report(out, report, config);
    if (!out) {
        throw IoError("failed writing report to '" + destination.string() + "'");
    }
}

// ----------------------------------------------------------------------------
// Trace
// ----------------------------------------------------------------------------

/// Labels for a matrix built on 2x2 windows: "a/b" for each adjacent pair.
inline std::vector<std::string> window_labels(const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k + 1 < labels.size(); ++k) out.push_back(labels[k] + "/" + labels[k + 1]);
    return out;
}

inline void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                             const std::vector<std::string>& row_labels, const std::vector<std::string>& col_labels) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write trace file '" + path.string() + "'");
    }
    out << "index";
    for (const auto& c : col_labels) out << ',' << detail::csv_field(c);
    out << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << detail::csv_field(row_labels.at(r));
        for (double v : m.row(r)) out << ',' << detail::full_precision(v);
        out << '\n';
    }
    if (!out) {
        throw IoError("failed writing trace file '" + path.string() + "'");
    }
}

/// Writes every stage matrix as CSV into `dir`: four shared (C+, C-, D+, D-)
/// and six per area (B, C, volume differences and coefficients against each
/// ideal). Returns the written paths.
inline std::vector<std::filesystem::path> write_trace(const AssessmentReport& report,
                                                      const std::filesystem::path& dir) {
    if (!report.result.trace) {
        throw std::logic_error("write_trace: report carries no trace (run with emit_trace)");
    }
    const auto& st = *report.result.trace;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create trace directory '" + dir.string() + "'");
    }

    const auto& rows = report.index_ids;
    const auto& cols = report.period_labels;
    const auto wrows = window_labels(rows);
    const auto wcols = window_labels(cols);

    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const Matrix& m, bool windowed) {
        auto path = dir / (name + ".csv");
        write_matrix_csv(path, m, windowed ? wrows : rows, windowed ? wcols : cols);
        written.push_back(path);
    };

    put("C_pos", st.positive_ideal, false);
    put("C_neg", st.negative_ideal, false);
    put("D_pos", st.positive_volume, true);
    put("D_neg", st.negative_volume, true);
    for (std::size_t i = 0; i < st.standardized.size(); ++i) {
        const std::string prefix = "area" + std::to_string(i + 1) + "_";
        put(prefix + "B", st.standardized[i], false);
        put(prefix + "C", st.weighted[i], false);
        put(prefix + "Ddiff_pos", st.volume_diff_pos[i], true);
        put(prefix + "Ddiff_neg", st.volume_diff_neg[i], true);
        put(prefix + "G_pos", st.coeff_pos[i], true);
        put(prefix + "G_neg", st.coeff_neg[i], true);
    }
    return written;
}

}  // namespace dynrisk
