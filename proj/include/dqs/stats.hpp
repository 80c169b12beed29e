#pragma once

#include "dqs/stats/stats.hpp"
