#pragma once

#include "dqs/protocol/analysis.hpp"
#include "dqs/protocol/config.hpp"
#include "dqs/protocol/engine.hpp"
#include "dqs/protocol/equivalence.hpp"
#include "dqs/protocol/transcript.hpp"
