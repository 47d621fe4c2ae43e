#pragma once

// Umbrella header for the discoord library: graph topology, scenario model,
// the two consensus solvers, dense reference oracles, and reporting.

#include "discoord/convergence.hpp"
#include "discoord/distribution.hpp"
#include "discoord/errors.hpp"
#include "discoord/format.hpp"
#include "discoord/generation.hpp"
#include "discoord/graph.hpp"
#include "discoord/oracle.hpp"
#include "discoord/report.hpp"
#include "discoord/scenario.hpp"
#include "discoord/trace.hpp"
