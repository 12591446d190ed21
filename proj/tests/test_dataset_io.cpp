#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "dynrisk/case_study.hpp"
#include "dynrisk/dataset_io.hpp"
#include "support/generators.hpp"

using namespace dynrisk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("dynrisk-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
}

std::string bundled_text() { return detail::read_file(DYNRISK_DATA_DIR "/wui-case.json"); }

void write_bundle(const fs::path& dir, const AssessmentInput& in) {
    std::ofstream idx(dir / "indices.csv");
    idx << "id,name,orientation,low,high,weight\n";
    for (const auto& d : in.indices) {
        idx << d.id << ",\"" << d.name << "\"," << to_string(d.orientation.kind) << ",,," << d.weight << "\n";
    }
    std::ofstream per(dir / "periods.csv");
    per << "label,weight\n";
    for (std::size_t t = 0; t < in.periods.size(); ++t) per << in.periods[t] << "," << in.time_weights[t] << "\n";
    fs::create_directories(dir / "areas");
    for (const auto& a : in.areas) {
        std::ofstream f(dir / "areas" / (a.name + ".csv"));
        f << "index";
        for (const auto& p : in.periods) f << "," << p;
        f << "\n";
        // rows written in reverse order: loading matches them by id
        for (std::size_t j = in.indices.size(); j-- > 0;) {
            f << in.indices[j].id;
            for (double v : a.values.row(j)) f << "," << v;
            f << "\n";
        }
    }
}

}  // namespace

TEST_CASE("bundled dataset equals the built-in case study", "[io]") {
    const auto loaded = load_input(DYNRISK_DATA_DIR "/wui-case.json");
    CHECK(loaded == case_study_input());
}

TEST_CASE("json round trip is lossless", "[io][property]") {
    testing::Rng rng(601);
    for (int k = 0; k < 50; ++k) {
        auto in = testing::random_input(rng, testing::random_shape(rng), true);
        const auto text = input_to_json(in).dump();
        CHECK(parse_json_input(text) == in);
    }
    const auto cs = case_study_input();
    CHECK(parse_json_input(input_to_json(cs).dump(2)) == cs);
}

TEST_CASE("json errors carry a locus", "[io]") {
    SECTION("syntax error") {
        try {
            parse_json_input("{\"indices\": [", "broken.json");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.locus() == "broken.json");
        }
    }
    SECTION("missing key") {
        try {
            parse_json_input(R"({"indices": [{"id": "a"}], "periods": [], "areas": []})", "x.json");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.locus() == "x.json: indices[0]");
            CHECK(std::string(e.what()).find("weight") != std::string::npos);
        }
    }
    SECTION("unknown orientation lists the allowed set") {
        auto doc = input_to_json(case_study_input());
        doc["indices"][2]["orientation"] = "sideways";
        try {
            parse_json_input(doc.dump(), "o.json");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            const std::string what = e.what();
            CHECK(what.find("sideways") != std::string::npos);
            for (const char* name : {"benefit", "cost", "intermediate", "interval"}) {
                CHECK(what.find(name) != std::string::npos);
            }
            CHECK(e.locus().find("indices[2]") != std::string::npos);
        }
    }
    SECTION("missing file") { CHECK_THROWS_AS(load_input("/nonexistent/input.json"), ParseError); }
}

TEST_CASE("shape problems are validation errors naming the area", "[io]") {
    SECTION("ragged rows") {
        auto doc = input_to_json(case_study_input());
        doc["areas"][1]["values"][4].erase(0);
        try {
            parse_json_input(doc.dump());
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            REQUIRE(e.issues().size() == 1);
            CHECK(e.issues()[0] == "area 'area 2' row 5 has 5 values, expected T=6");
        }
    }
    SECTION("every row one short") {
        auto doc = input_to_json(case_study_input());
        for (auto& row : doc["areas"][2]["values"]) row.erase(5);
        const auto in = parse_json_input(doc.dump());
        const auto issues = find_input_issues(in);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0] == "area 3 'area 3': values are 15x5, expected 15x6 (m indices x T=6 periods)");
    }
}

TEST_CASE("comments are accepted in json input", "[io]") {
    CHECK(bundled_text().rfind("//", 0) == 0);
    const auto in = parse_json_input("// note\n" + input_to_json(case_study_input()).dump());
    CHECK(in.area_count() == 3);
}

TEST_CASE("csv bundle loads the same dataset as json", "[io]") {
    TempDir tmp;
    const auto cs = case_study_input();
    write_bundle(tmp.path, cs);
    const auto loaded = load_input(tmp.path);
    REQUIRE(loaded.area_count() == 3);
    // area files load in file-name order, which here matches input order
    CHECK(loaded == cs);
}

TEST_CASE("csv bundle errors", "[io]") {
    TempDir tmp;
    const auto cs = case_study_input();
    write_bundle(tmp.path, cs);

    SECTION("short row") {
        write(tmp.path / "areas" / "area 2.csv", "index,t1,t2,t3,t4,t5,t6\nfuel_load,1,2,3\n");
        try {
            load_input(tmp.path);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.issues().front() == "area 'area 2' row 'fuel_load' has 3 values, expected T=6");
            CHECK(e.issues().size() == 15);
        }
    }
    SECTION("bad number") {
        write(tmp.path / "periods.csv", "label,weight\nt1,0.21\nt2,abc\nt3,0.25\nt4,0.12\nt5,0.18\nt6,0.09\n");
        try {
            load_input(tmp.path);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.locus().find("periods.csv:3") != std::string::npos);
        }
    }
    SECTION("mismatched period header") {
        std::ifstream in(tmp.path / "areas" / "area 1.csv");
        std::string body((std::istreambuf_iterator<char>(in)), {});
        body.replace(body.find("t6"), 2, "t7");
        write(tmp.path / "areas" / "area 1.csv", body);
        CHECK_THROWS_AS(load_input(tmp.path), ParseError);
    }
    SECTION("unknown orientation") {
        write(tmp.path / "indices.csv", "id,name,orientation,low,high,weight\na,a,up,,,0.5\nb,b,cost,,,0.5\n");
        CHECK_THROWS_WITH(load_input(tmp.path), Catch::Matchers::ContainsSubstring("allowed orientations"));
    }
}
