#pragma once

// Umbrella header.

#include "chaoticnn/boolean_map.hpp"
#include "chaoticnn/configuration.hpp"
#include "chaoticnn/dynamics.hpp"
#include "chaoticnn/experiment.hpp"
#include "chaoticnn/iteration_graph.hpp"
#include "chaoticnn/lbfgs.hpp"
#include "chaoticnn/metric.hpp"
#include "chaoticnn/mlp.hpp"
#include "chaoticnn/strategy.hpp"
#include "chaoticnn/training.hpp"
#include "chaoticnn/witnesses.hpp"
