#pragma once

// Umbrella header.
#include "modmat/core.hpp"
#include "modmat/lattice.hpp"
#include "modmat/circuits.hpp"
#include "modmat/flats.hpp"
#include "modmat/oriented.hpp"
#include "modmat/generators.hpp"
#include "modmat/io.hpp"
#include "modmat/experiment.hpp"
