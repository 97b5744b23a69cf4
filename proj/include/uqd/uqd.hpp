#pragma once

#include <uqd/arm.hpp>
#include <uqd/archive.hpp>
#include <uqd/errors.hpp>
#include <uqd/experiment.hpp>
#include <uqd/metrics.hpp>
#include <uqd/noise.hpp>
#include <uqd/rng.hpp>
#include <uqd/solvers.hpp>
#include <uqd/stats.hpp>
#include <uqd/tasks.hpp>
