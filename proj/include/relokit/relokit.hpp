#pragma once

#include "relokit/config.hpp"
#include "relokit/core.hpp"
#include "relokit/demand.hpp"
#include "relokit/flow.hpp"
#include "relokit/metrics.hpp"
#include "relokit/mincostflow.hpp"
#include "relokit/oracle.hpp"
#include "relokit/predictor.hpp"
#include "relokit/rng.hpp"
#include "relokit/scheduler.hpp"
#include "relokit/simulator.hpp"
