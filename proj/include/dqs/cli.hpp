#pragma once

#include "dqs/cli/commands.hpp"
#include "dqs/cli/report.hpp"
#include "dqs/cli/scenario.hpp"
