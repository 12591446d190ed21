#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <boost/tokenizer.hpp>

#include "dynrisk/case_study.hpp"
#include "dynrisk/report_io.hpp"

using namespace dynrisk;
namespace fs = std::filesystem;

namespace {

std::string render(const AssessmentReport& report, OutputFormat format, int decimals = 2) {
    RunConfig cfg;
    cfg.output_format = format;
    cfg.report_decimals = decimals;
    std::ostringstream out;
    write_report(out, report, cfg);
    return out.str();
}

// Data block of a trace CSV; header_cols counts the column labels.
Matrix read_matrix_csv(const fs::path& path, std::size_t& header_cols) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    header_cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        boost::tokenizer<boost::escaped_list_separator<char>> tok(line);
        std::vector<double> row;
        bool first = true;
        for (const auto& f : tok) {
            if (!first) row.push_back(std::stod(f));
            first = false;
        }
        rows.push_back(row);
    }
    return Matrix::from_rows(rows);
}

}  // namespace

TEST_CASE("text report", "[report]") {
    const auto text = render(demo(), OutputFormat::Text);
    CHECK(text.rfind("dynrisk 1.0.0  dataset ", 0) == 0);
    CHECK(text.find("zeroing: first-column") != std::string::npos);
    CHECK(text.find("0.45") != std::string::npos);
    CHECK(text.find("0.49") != std::string::npos);
    CHECK(text.find("0.55") != std::string::npos);
    CHECK(text.find("medium risk") != std::string::npos);
    // area 3 is listed first
    CHECK(text.find("area 3") < text.find("area 1"));

    const auto four = render(demo(), OutputFormat::Text, 4);
    CHECK(four.find("0.4503") != std::string::npos);
}

TEST_CASE("text report marks ties", "[report]") {
    auto in = case_study_input();
    in.areas.push_back({"twin", in.areas[0].values});
    const auto text = render(run_assessment(in, {}), OutputFormat::Text);
    CHECK(text.find("3=") != std::string::npos);
    CHECK(text.find("'=' marks") != std::string::npos);
}

TEST_CASE("json report re-parses to the same values", "[report]") {
    const auto report = demo();
    const auto doc = nlohmann::json::parse(render(report, OutputFormat::Json));
    CHECK(doc["tool_version"] == "1.0.0");
    CHECK(doc["dataset_fingerprint"] == report.dataset_fingerprint);
    CHECK(doc["config"]["zeroing_mode"] == "first-column");
    REQUIRE(doc["areas"].size() == 3);
    const auto ranked = report.result.ranked();
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& a = doc["areas"][k];
        CHECK(a["name"] == ranked[k].name);
        CHECK(a["gamma_pos"].get<double>() == ranked[k].gamma_pos);
        CHECK(a["gamma_neg"].get<double>() == ranked[k].gamma_neg);
        CHECK(a["superiority"].get<double>() == ranked[k].superiority);
        CHECK(a["rank"] == ranked[k].rank);
        CHECK(a["level"] == "medium risk");
    }
}

TEST_CASE("json report is byte-identical across runs apart from duration", "[report]") {
    auto strip = [](AssessmentReport r) {
        r.duration_ms = 0;
        return render(r, OutputFormat::Json);
    };
    CHECK(strip(demo()) == strip(demo()));
}

TEST_CASE("csv report", "[report]") {
    const auto report = demo();
    const auto ranked = report.result.ranked();
    std::istringstream in(render(report, OutputFormat::Csv));
    std::string line;
    std::getline(in, line);
    CHECK(line == "rank,name,gamma_pos,gamma_neg,superiority,level,tied");
    int rows = 0;
    while (std::getline(in, line)) {
        boost::tokenizer<boost::escaped_list_separator<char>> tok(line);
        std::vector<std::string> fields(tok.begin(), tok.end());
        REQUIRE(fields.size() == 7);
        const auto& a = ranked.at(static_cast<std::size_t>(rows));
        CHECK(fields[1] == a.name);
        CHECK(std::stod(fields[4]) == a.superiority);
        CHECK(fields[6] == "false");
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("trace writes every stage matrix", "[report]") {
    RunConfig cfg;
    cfg.emit_trace = true;
    const auto report = demo(cfg);
    const auto dir = fs::temp_directory_path() / ("dynrisk-trace-" + std::to_string(std::random_device{}()));
    const auto written = write_trace(report, dir);
    CHECK(written.size() == 22);

    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".csv";
    CHECK(files == 22);

    std::size_t header_cols = 0;
    const auto c_pos = read_matrix_csv(dir / "C_pos.csv", header_cols);
    CHECK(header_cols == 6);
    CHECK(c_pos == report.result.trace->positive_ideal);
    const auto g = read_matrix_csv(dir / "area2_G_neg.csv", header_cols);
    CHECK(header_cols == 5);
    CHECK(g.rows() == 14);
    CHECK(g.cols() == 5);
    CHECK(g == report.result.trace->coeff_neg[1]);
    const auto b = read_matrix_csv(dir / "area3_B.csv", header_cols);
    CHECK(b.rows() == 15);
    CHECK(b.cols() == 6);

    fs::remove_all(dir);
    CHECK_THROWS_AS(write_trace(demo(), dir), std::logic_error);
}

TEST_CASE("unwritable destinations raise IoError", "[report]") {
    const auto report = demo();
    CHECK_THROWS_AS(emit_report(report, {}, "/nonexistent-dir/report.txt"), IoError);
    RunConfig cfg;
    cfg.emit_trace = true;
    CHECK_THROWS_AS(write_trace(demo(cfg), "/proc/dynrisk-trace"), IoError);
}
