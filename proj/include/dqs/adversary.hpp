#pragma once

#include "dqs/adversary/attack.hpp"
#include "dqs/adversary/attacks.hpp"
#include "dqs/adversary/calibration.hpp"
#include "dqs/adversary/factory.hpp"
