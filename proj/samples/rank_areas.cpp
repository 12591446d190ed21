// Builds a small assessment in code, runs it and prints the ranking.
//
//   rank_areas [dataset.json]
//
// With no argument a three-district example is used.

#include <cstdio>
#include <iostream>

#include "dynrisk/dynrisk.hpp"

namespace {

dynrisk::AssessmentInput districts() {
    using dynrisk::IndexOrientation;
    dynrisk::AssessmentInput in;
    in.indices = {
        {"fuel", "Fuel load", IndexOrientation::benefit(), 0.4},
        {"hydrants", "Hydrant coverage", IndexOrientation::cost(), 0.35},
        {"humidity", "Relative humidity", IndexOrientation::interval(20, 45), 0.25},
    };
    in.periods = {"spring", "summer", "autumn"};
    in.time_weights = {0.3, 0.45, 0.25};
    in.areas = {
        {"north", dynrisk::Matrix{{30, 55, 40}, {70, 70, 72}, {50, 25, 40}}},
        {"river", dynrisk::Matrix{{20, 35, 25}, {85, 85, 85}, {65, 55, 60}}},
        {"ridge", dynrisk::Matrix{{45, 70, 60}, {40, 42, 45}, {35, 15, 30}}},
    };
    return in;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const auto input = argc > 1 ? dynrisk::load_input(argv[1]) : districts();
        const auto report = dynrisk::run_assessment(input, {});
        for (const auto& a : report.result.ranked()) {
            std::printf("%d%s %-10s s=%.3f  (%s)\n", a.rank, a.tied ? "=" : " ", a.name.c_str(), a.superiority,
                        std::string(dynrisk::to_string(a.level)).c_str());
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
