#pragma once

#include "dynrisk/matrix.hpp"
#include "dynrisk/model.hpp"
#include "dynrisk/pipeline.hpp"

namespace dynrisk {

/// Three wildland-urban interface areas scored by experts over six periods
/// on the default 15-index schema. The score tables are written one period
/// per line and transposed into index x period.
inline AssessmentInput case_study_input() {
    const Matrix area1 = Matrix{
        {20, 30, 35, 40, 25, 50, 45, 20, 55, 40, 60, 70, 65, 80, 60},
        {30, 40, 45, 45, 30, 55, 50, 30, 60, 50, 55, 70, 65, 80, 60},
        {25, 35, 30, 35, 40, 50, 55, 35, 50, 45, 65, 70, 65, 80, 60},
        {30, 40, 50, 40, 35, 45, 35, 25, 60, 55, 50, 70, 65, 80, 60},
        {40, 30, 45, 50, 30, 55, 40, 45, 65, 40, 50, 70, 65, 80, 60},
        {45, 50, 35, 30, 45, 40, 50, 35, 45, 35, 65, 70, 65, 80, 60},
    }.transposed();
    const Matrix area2 = Matrix{
        {25, 35, 40, 35, 30, 45, 40, 25, 50, 45, 55, 60, 75, 70, 65},
        {35, 30, 35, 40, 35, 50, 45, 35, 55, 40, 65, 60, 75, 70, 65},
        {30, 40, 25, 45, 40, 55, 50, 30, 45, 50, 55, 60, 75, 70, 65},
        {35, 45, 30, 35, 30, 40, 30, 35, 40, 30, 50, 60, 75, 70, 65},
        {45, 35, 35, 30, 35, 50, 45, 45, 60, 45, 40, 60, 75, 70, 65},
        {40, 45, 30, 40, 45, 40, 35, 30, 40, 50, 55, 60, 75, 70, 65},
    }.transposed();
    const Matrix area3 = Matrix{
        {40, 50, 30, 20, 65, 50, 55, 30, 40, 55, 50, 80, 70, 60, 50},
        {30, 40, 25, 30, 60, 55, 50, 40, 50, 50, 60, 80, 70, 60, 50},
        {35, 45, 35, 40, 55, 60, 60, 45, 55, 40, 65, 80, 70, 60, 50},
        {45, 35, 40, 45, 50, 45, 65, 50, 45, 35, 45, 80, 70, 60, 50},
        {50, 55, 45, 35, 45, 55, 55, 55, 65, 40, 45, 80, 70, 60, 50},
        {45, 40, 35, 25, 40, 65, 40, 35, 45, 45, 50, 80, 70, 60, 50},
    }.transposed();

    AssessmentInput input;
    input.indices = default_wui_schema();
    input.periods = {"t1", "t2", "t3", "t4", "t5", "t6"};
    input.time_weights = {0.21, 0.15, 0.25, 0.12, 0.18, 0.09};
    input.areas = {{"area 1", area1}, {"area 2", area2}, {"area 3", area3}};
    return input;
}

/// Runs the bundled case study.
inline AssessmentReport demo(const RunConfig& config = {}) { return run_assessment(case_study_input(), config); }

}  // namespace dynrisk
