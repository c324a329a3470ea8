#pragma once

#include "mixclock/bigraph.hpp"
#include "mixclock/clock.hpp"
#include "mixclock/experiment.hpp"
#include "mixclock/generators.hpp"
#include "mixclock/ids.hpp"
#include "mixclock/online.hpp"
#include "mixclock/parse_error.hpp"
#include "mixclock/random.hpp"
#include "mixclock/stamped_io.hpp"
#include "mixclock/trace.hpp"
#include "mixclock/trace_io.hpp"
