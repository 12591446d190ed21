#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <boost/tokenizer.hpp>
#include <nlohmann/json.hpp>

#include "dynrisk/errors.hpp"
#include "dynrisk/model.hpp"

namespace dynrisk {

// Dataset files.
//
// json:
//   { "indices": [ {"id", "name", "orientation", "weight"} ... ],
//     "periods": [ {"label", "weight"} ... ],
//     "areas":   [ {"name", "values": [[...T reals...] x m]} ... ] }
//   orientation is "benefit" | "cost" | "intermediate" | {"interval": [low, high]}.
//   // and /* */ comments are accepted.
//
// csv-bundle (a directory):
//   indices.csv   id,name,orientation,low,high,weight
//   periods.csv   label,weight
//   areas/*.csv   index,<period labels...>   then one row per index id
//                 area name is the file stem; areas load in file-name order.

enum class InputFormat { Json, CsvBundle };

namespace detail {

using json = nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const json& require(const json& obj, const char* key, const std::string& locus) {
    if (!obj.is_object()) {
        throw ParseError(locus, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(locus, std::string("missing field '") + key + "'");
    }
    return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& locus) {
    const auto& v = require(obj, key, locus);
    if (!v.is_string()) {
        throw ParseError(locus + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

inline double require_number(const json& v, const std::string& locus) {
    if (!v.is_number()) {
        throw ParseError(locus, "expected a number, got " + std::string(v.type_name()));
    }
    return v.get<double>();
}

inline const json& require_array(const json& obj, const char* key, const std::string& locus) {
    const auto& v = require(obj, key, locus);
    if (!v.is_array()) {
        throw ParseError(locus.empty() ? key : locus + "." + key, "expected an array");
    }
    return v;
}

inline std::string allowed_orientations() {
    return "allowed orientations: \"benefit\", \"cost\", \"intermediate\", {\"interval\": [low, high]}";
}

inline IndexOrientation parse_orientation(const json& v, const std::string& locus) {
    if (v.is_string()) {
        const auto text = v.get<std::string>();
        auto kind = parse_orientation_kind(text);
        if (!kind || *kind == OrientationKind::Interval) {
            throw ParseError(locus, "unknown orientation '" + text + "'; " + allowed_orientations());
        }
        return {*kind, {}, {}};
    }
    if (v.is_object() && v.size() == 1 && v.contains("interval")) {
        const auto& b = v.at("interval");
        if (!b.is_array() || b.size() != 2) {
            throw ParseError(locus + ".interval", "expected [low, high]");
        }
        return IndexOrientation::interval(require_number(b[0], locus + ".interval[0]"),
                                          require_number(b[1], locus + ".interval[1]"));
    }
    throw ParseError(locus, "unrecognized orientation " + v.dump() + "; " + allowed_orientations());
}

inline json orientation_to_json(const IndexOrientation& o) {
    if (o.kind == OrientationKind::Interval) {
        return json{{"interval", {o.interval_low.value_or(0.0), o.interval_high.value_or(0.0)}}};
    }
    return std::string(to_string(o.kind));
}

}  // namespace detail

/// Builds an input from the json schema. Ragged area rows are reported as
/// validation issues; the result is not otherwise validated.
inline AssessmentInput input_from_json(const nlohmann::json& doc) {
    using detail::json;
    AssessmentInput input;

    const auto& indices = detail::require_array(doc, "indices", "");
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const std::string locus = "indices[" + std::to_string(j) + "]";
        const auto& e = indices[j];
        IndexDefinition def;
        def.id = detail::require_string(e, "id", locus);
        def.name = e.contains("name") ? detail::require_string(e, "name", locus) : def.id;
        def.orientation = e.contains("orientation")
                              ? detail::parse_orientation(e.at("orientation"), locus + ".orientation")
                              : IndexOrientation::benefit();
        def.weight = detail::require_number(detail::require(e, "weight", locus), locus + ".weight");
        input.indices.push_back(std::move(def));
    }

    const auto& periods = detail::require_array(doc, "periods", "");
    for (std::size_t t = 0; t < periods.size(); ++t) {
        const std::string locus = "periods[" + std::to_string(t) + "]";
        input.periods.push_back(detail::require_string(periods[t], "label", locus));
        input.time_weights.push_back(
            detail::require_number(detail::require(periods[t], "weight", locus), locus + ".weight"));
    }

    const std::size_t expected_cols = input.periods.size();
    std::vector<std::string> shape_issues;
    const auto& areas = detail::require_array(doc, "areas", "");
    for (std::size_t i = 0; i < areas.size(); ++i) {
        const std::string locus = "areas[" + std::to_string(i) + "]";
        AreaSeries area;
        area.name = detail::require_string(areas[i], "name", locus);
        const auto& rows = detail::require_array(areas[i], "values", locus);
        std::vector<std::vector<double>> values;
        bool ragged = false;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const std::string rlocus = locus + ".values[" + std::to_string(j) + "]";
            if (!rows[j].is_array()) {
                throw ParseError(rlocus, "expected an array of numbers");
            }
            std::vector<double> row;
            for (std::size_t t = 0; t < rows[j].size(); ++t) {
                row.push_back(detail::require_number(rows[j][t], rlocus + "[" + std::to_string(t) + "]"));
            }
            if (!values.empty() && row.size() != values.front().size()) {
                ragged = true;
            }
            values.push_back(std::move(row));
        }
        if (ragged) {
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[j].size() != expected_cols) {
                    shape_issues.push_back("area '" + area.name + "' row " + std::to_string(j + 1) + " has " +
                                           std::to_string(values[j].size()) + " values, expected T=" +
                                           std::to_string(expected_cols));
                }
            }
            continue;
        }
        area.values = Matrix::from_rows(values);
        input.areas.push_back(std::move(area));
    }
    if (!shape_issues.empty()) {
        throw ValidationError(std::move(shape_issues));
    }
    return input;
}

inline nlohmann::json input_to_json(const AssessmentInput& input) {
    using detail::json;
    json doc;
    doc["indices"] = json::array();
    for (const auto& idx : input.indices) {
        doc["indices"].push_back({{"id", idx.id},
                                  {"name", idx.name},
                                  {"orientation", detail::orientation_to_json(idx.orientation)},
                                  {"weight", idx.weight}});
    }
    doc["periods"] = json::array();
    for (std::size_t t = 0; t < input.periods.size(); ++t) {
        doc["periods"].push_back({{"label", input.periods[t]}, {"weight", input.time_weights.at(t)}});
    }
    doc["areas"] = json::array();
    for (const auto& area : input.areas) {
        doc["areas"].push_back({{"name", area.name}, {"values", area.values.to_rows()}});
    }
    return doc;
}

inline AssessmentInput parse_json_input(std::string_view text, const std::string& source = "<json>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, e.what());
    }
    try {
        return input_from_json(doc);
    } catch (const ParseError& e) {
        throw ParseError(e.locus().empty() ? source : source + ": " + e.locus(), e.message());
    }
}

// ----------------------------------------------------------------------------
// csv-bundle
// ----------------------------------------------------------------------------

namespace detail {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path.string(), "cannot open file");
    }
    using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        CsvRow row{lineno, {}};
        try {
            Tokenizer tok(line, boost::escaped_list_separator<char>('\\', ',', '"'));
            for (const auto& field : tok) row.fields.push_back(trim(field));
        } catch (const boost::escaped_list_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno), e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline double parse_real(const std::string& text, const std::string& locus) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(locus, "expected a number, got '" + text + "'");
    }
    return v;
}

inline std::map<std::string, std::size_t> header_columns(const CsvRow& header, const std::string& file,
                                                         std::initializer_list<const char*> required) {
    std::map<std::string, std::size_t> cols;
    for (std::size_t c = 0; c < header.fields.size(); ++c) cols[header.fields[c]] = c;
    for (const char* name : required) {
        if (!cols.contains(name)) {
            throw ParseError(file + ":" + std::to_string(header.line), std::string("missing column '") + name + "'");
        }
    }
    return cols;
}

inline const std::string& field(const CsvRow& row, std::size_t col, const std::string& file) {
    if (col >= row.fields.size()) {
        throw ParseError(file + ":" + std::to_string(row.line),
                         "expected at least " + std::to_string(col + 1) + " fields");
    }
    return row.fields[col];
}

}  // namespace detail

inline AssessmentInput load_csv_bundle(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    AssessmentInput input;

    {
        const auto file = (dir / "indices.csv").string();
        auto rows = detail::read_csv(file);
        if (rows.empty()) throw ParseError(file, "empty file");
        auto cols = detail::header_columns(rows[0], file, {"id", "weight"});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            const std::string locus = file + ":" + std::to_string(row.line);
            IndexDefinition def;
            def.id = detail::field(row, cols["id"], file);
            def.name = cols.contains("name") ? detail::field(row, cols["name"], file) : def.id;
            std::string orient = cols.contains("orientation") ? detail::field(row, cols["orientation"], file) : "";
            if (orient.empty()) orient = "benefit";
            auto kind = parse_orientation_kind(orient);
            if (!kind) {
                throw ParseError(locus, "unknown orientation '" + orient +
                                            "'; allowed orientations: benefit, cost, intermediate, interval");
            }
            def.orientation.kind = *kind;
            auto bound = [&](const char* name) -> std::optional<double> {
                if (!cols.contains(name) || cols[name] >= row.fields.size() || row.fields[cols[name]].empty()) {
                    return std::nullopt;
                }
                return detail::parse_real(row.fields[cols[name]], locus + " column '" + name + "'");
            };
            def.orientation.interval_low = bound("low");
            def.orientation.interval_high = bound("high");
            def.weight = detail::parse_real(detail::field(row, cols["weight"], file), locus + " column 'weight'");
            input.indices.push_back(std::move(def));
        }
    }

    {
        const auto file = (dir / "periods.csv").string();
        auto rows = detail::read_csv(file);
        if (rows.empty()) throw ParseError(file, "empty file");
        auto cols = detail::header_columns(rows[0], file, {"label", "weight"});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const std::string locus = file + ":" + std::to_string(rows[r].line);
            input.periods.push_back(detail::field(rows[r], cols["label"], file));
            input.time_weights.push_back(
                detail::parse_real(detail::field(rows[r], cols["weight"], file), locus + " column 'weight'"));
        }
    }

    const fs::path area_dir = dir / "areas";
    if (!fs::is_directory(area_dir)) {
        throw ParseError(area_dir.string(), "missing areas directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(area_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::map<std::string, std::size_t> index_row;
    for (std::size_t j = 0; j < input.indices.size(); ++j) index_row[input.indices[j].id] = j;

    std::vector<std::string> shape_issues;
    for (const auto& path : files) {
        const auto file = path.string();
        auto rows = detail::read_csv(path);
        if (rows.empty()) throw ParseError(file, "empty file");
        AreaSeries area;
        area.name = path.stem().string();

        const auto& header = rows[0].fields;
        const std::vector<std::string> labels(header.begin() + std::min<std::size_t>(1, header.size()), header.end());
        if (labels != input.periods) {
            throw ParseError(file + ":" + std::to_string(rows[0].line),
                             "period columns do not match periods.csv");
        }
        const std::size_t cols = input.periods.size();
        area.values = Matrix(input.indices.size(), cols);
        std::vector<bool> seen(input.indices.size(), false);
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            const std::string locus = file + ":" + std::to_string(row.line);
            const auto& id = row.fields.at(0);
            auto it = index_row.find(id);
            if (it == index_row.end()) throw ParseError(locus, "unknown index id '" + id + "'");
            if (seen[it->second]) throw ParseError(locus, "duplicate row for index '" + id + "'");
            seen[it->second] = true;
            if (row.fields.size() != cols + 1) {
                shape_issues.push_back("area '" + area.name + "' row '" + id + "' has " +
                                       std::to_string(row.fields.size() - 1) + " values, expected T=" +
                                       std::to_string(cols));
                continue;
            }
            for (std::size_t t = 0; t < cols; ++t) {
                area.values(it->second, t) =
                    detail::parse_real(row.fields[t + 1], locus + " column '" + input.periods[t] + "'");
            }
        }
        for (std::size_t j = 0; j < seen.size(); ++j) {
            if (!seen[j]) {
                shape_issues.push_back("area '" + area.name + "' has no row for index '" + input.indices[j].id + "'");
            }
        }
        input.areas.push_back(std::move(area));
    }
    if (!shape_issues.empty()) {
        throw ValidationError(std::move(shape_issues));
    }
    return input;
}

/// Reads and validates a dataset. Throws ParseError (unreadable or malformed
/// file, with the offending locus) or ValidationError.
inline AssessmentInput load_input(const std::filesystem::path& path, InputFormat format) {
    AssessmentInput input = format == InputFormat::Json ? parse_json_input(detail::read_file(path), path.string())
                                                        : load_csv_bundle(path);
    return validate_input(std::move(input));
}

/// Directories load as csv-bundle, files as json.
inline AssessmentInput load_input(const std::filesystem::path& path) {
    return load_input(path, std::filesystem::is_directory(path) ? InputFormat::CsvBundle : InputFormat::Json);
}

}  // namespace dynrisk
