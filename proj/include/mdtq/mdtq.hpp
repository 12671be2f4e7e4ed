#pragma once

#include "mdtq/engine.hpp"
#include "mdtq/errors.hpp"
#include "mdtq/metrics.hpp"
#include "mdtq/policies.hpp"
#include "mdtq/quantum_stats.hpp"
#include "mdtq/report.hpp"
#include "mdtq/reproduce.hpp"
#include "mdtq/ticks.hpp"
#include "mdtq/workload.hpp"
