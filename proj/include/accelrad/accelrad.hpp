#pragma once

// Umbrella header for the acceleration-radiation toolkit.

#include "accelrad/electron.hpp"
#include "accelrad/errors.hpp"
#include "accelrad/kinematics.hpp"
#include "accelrad/mirror.hpp"
#include "accelrad/quadrature.hpp"
#include "accelrad/special_functions.hpp"
#include "accelrad/thermal.hpp"
#include "accelrad/trajectory.hpp"
#include "accelrad/version.hpp"
