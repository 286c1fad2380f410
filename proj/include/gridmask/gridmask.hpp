#pragma once

#include "gridmask/augment.hpp"
#include "gridmask/baselines.hpp"
#include "gridmask/grid.hpp"
#include "gridmask/image.hpp"
#include "gridmask/io.hpp"
#include "gridmask/mask.hpp"
#include "gridmask/parallel.hpp"
#include "gridmask/rng.hpp"
#include "gridmask/schedule.hpp"
#include "gridmask/sim.hpp"
