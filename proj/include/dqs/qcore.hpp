#pragma once

#include "dqs/qcore/channel.hpp"
#include "dqs/qcore/distance.hpp"
#include "dqs/qcore/linalg.hpp"
#include "dqs/qcore/measure.hpp"
#include "dqs/qcore/observable.hpp"
#include "dqs/qcore/protocol_states.hpp"
#include "dqs/qcore/random.hpp"
#include "dqs/qcore/rng.hpp"
#include "dqs/qcore/state.hpp"
