#pragma once

#include "constants.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "graph_analysis.hpp"
#include "pool_model.hpp"
#include "hardware_scaling.hpp"
#include "simulator.hpp"
#include "csv.hpp"
#include "golden.hpp"
#include "config.hpp"
