#pragma once

// Umbrella header for the MIDI dependence-index library.

#include "midi/baselines.hpp"
#include "midi/common.hpp"
#include "midi/csv.hpp"
#include "midi/datagen.hpp"
#include "midi/estimator.hpp"
#include "midi/parallel.hpp"
#include "midi/power.hpp"
#include "midi/rng.hpp"
