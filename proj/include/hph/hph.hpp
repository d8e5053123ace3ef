// Umbrella header.
#pragma once

#include "config.hpp"
#include "error.hpp"
#include "complex.hpp"
#include "subspace.hpp"
#include "harmonic.hpp"
#include "persistence.hpp"
#include "essential.hpp"
#include "stability.hpp"
#include "oracle.hpp"
#include "io.hpp"
