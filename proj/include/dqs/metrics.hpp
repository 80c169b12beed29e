#pragma once

#include "dqs/metrics/arc.hpp"
#include "dqs/metrics/bounds.hpp"
#include "dqs/metrics/inequalities.hpp"
#include "dqs/metrics/locc1.hpp"
#include "dqs/metrics/optimize.hpp"
#include "dqs/metrics/suites.hpp"
