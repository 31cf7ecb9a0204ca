#pragma once

// Umbrella header for the whole library.

#include "psolab/analysis.hpp"
#include "psolab/benchmarks.hpp"
#include "psolab/errors.hpp"
#include "psolab/format.hpp"
#include "psolab/harness.hpp"
#include "psolab/random_stream.hpp"
#include "psolab/run.hpp"
#include "psolab/swarm.hpp"
