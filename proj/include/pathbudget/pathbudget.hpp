#pragma once

#include "pathbudget/budget.hpp"
#include "pathbudget/correlation.hpp"
#include "pathbudget/error_metrics.hpp"
#include "pathbudget/grid.hpp"
#include "pathbudget/paths.hpp"
#include "pathbudget/plot.hpp"
#include "pathbudget/rng.hpp"
#include "pathbudget/sweep.hpp"
