#pragma once

// Umbrella header.

#include "tt/counting.hpp"
#include "tt/entry_set.hpp"
#include "tt/errors.hpp"
#include "tt/functionals.hpp"
#include "tt/grid.hpp"
#include "tt/json_io.hpp"
#include "tt/margins.hpp"
#include "tt/random.hpp"
#include "tt/sampling.hpp"
#include "tt/scaling.hpp"
#include "tt/typical.hpp"
