// dynrisk: rank assessed areas by dynamic multi-criteria risk.
//
//   dynrisk assess   --input <file|dir> [--format text|json|csv] [--output <path>]
//                    [--trace-dir <dir>] [--zeroing first-column|first-element|none]
//                    [--decimals N] [--input-format auto|json|csv-bundle] [--no-renormalize]
//   dynrisk validate --input <file|dir>
//   dynrisk demo     [--trace-dir <dir>] [--format ...] [--output <path>] [--decimals N]
//
// Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure,
// 3 degenerate computation.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dynrisk/dynrisk.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2, kDegenerate = 3 };

struct Options {
    std::string input;
    std::string input_format = "auto";
    std::string output;
    std::string trace_dir;
    std::string format = "text";
    std::string zeroing = "first-column";
    int decimals = 2;
    bool no_renormalize = false;
};

dynrisk::AssessmentInput load(const Options& opt) {
    if (opt.input_format == "json") return dynrisk::load_input(opt.input, dynrisk::InputFormat::Json);
    if (opt.input_format == "csv-bundle") return dynrisk::load_input(opt.input, dynrisk::InputFormat::CsvBundle);
    return dynrisk::load_input(opt.input);
}

dynrisk::RunConfig make_config(const Options& opt) {
    dynrisk::RunConfig cfg;
    cfg.zeroing_mode = *dynrisk::parse_zeroing_mode(opt.zeroing);
    cfg.renormalize_weights = !opt.no_renormalize;
    cfg.report_decimals = opt.decimals;
    cfg.emit_trace = !opt.trace_dir.empty();
    cfg.output_format = *dynrisk::parse_output_format(opt.format);
    return cfg;
}

void finish(const dynrisk::AssessmentReport& report, const dynrisk::RunConfig& cfg, const Options& opt) {
    dynrisk::emit_report(report, cfg, opt.output);
    if (!opt.trace_dir.empty()) {
        auto files = dynrisk::write_trace(report, opt.trace_dir);
        std::cerr << "wrote " << files.size() << " trace matrices to " << opt.trace_dir << "\n";
    }
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return kOk;
    } catch (const dynrisk::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const dynrisk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const dynrisk::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const dynrisk::DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
}

void add_output_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--output", opt.output, "Report destination (default stdout)");
    cmd->add_option("--trace-dir", opt.trace_dir, "Write every stage matrix as CSV into this directory");
    cmd->add_option("--decimals", opt.decimals, "Decimals in the text report")->check(CLI::Range(0, 12));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic multi-criteria risk ranking by volumetric grey incidence"};
    app.set_version_flag("--version", std::string(dynrisk::kVersion));
    app.require_subcommand(1);

    Options opt;

    auto* assess = app.add_subcommand("assess", "Assess a dataset and report ranking and risk levels");
    assess->add_option("--input", opt.input, "Dataset: json file or csv-bundle directory")->required();
    assess->add_option("--input-format", opt.input_format, "Dataset format")
        ->check(CLI::IsMember({"auto", "json", "csv-bundle"}));
    assess->add_option("--zeroing", opt.zeroing, "Zeroing image applied before volumes")
        ->check(CLI::IsMember({"first-column", "first-element", "none"}));
    assess->add_flag("--no-renormalize", opt.no_renormalize, "Use weights as given instead of rescaling to sum 1");
    add_output_options(assess, opt);

    auto* validate = app.add_subcommand("validate", "Check a dataset and list every problem found");
    validate->add_option("--input", opt.input, "Dataset: json file or csv-bundle directory")->required();
    validate->add_option("--input-format", opt.input_format, "Dataset format")
        ->check(CLI::IsMember({"auto", "json", "csv-bundle"}));

    auto* demo = app.add_subcommand("demo", "Run the bundled three-area case study");
    add_output_options(demo, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kIo;
    }

    if (assess->parsed()) {
        return guarded([&] {
            auto input = load(opt);
            auto cfg = make_config(opt);
            finish(dynrisk::run_assessment(input, cfg), cfg, opt);
        });
    }
    if (validate->parsed()) {
        return guarded([&] {
            auto input = load(opt);
            std::cout << "ok: " << input.area_count() << " areas, " << input.index_count() << " indices, "
                      << input.period_count() << " periods\n";
        });
    }
    return guarded([&] {
        auto cfg = make_config(opt);
        finish(dynrisk::demo(cfg), cfg, opt);
    });
}
