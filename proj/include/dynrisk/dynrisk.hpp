#pragma once

#include "dynrisk/case_study.hpp"
#include "dynrisk/dataset_io.hpp"
#include "dynrisk/errors.hpp"
#include "dynrisk/grey_incidence.hpp"
#include "dynrisk/matrix.hpp"
#include "dynrisk/model.hpp"
#include "dynrisk/normalization.hpp"
#include "dynrisk/pipeline.hpp"
#include "dynrisk/ranking.hpp"
#include "dynrisk/report_io.hpp"
#include "dynrisk/weighting.hpp"
