#pragma once

// Convenience umbrella: the whole library.

#include "config.hpp"
#include "darboux.hpp"
#include "error.hpp"
#include "figures.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "kink.hpp"
#include "numerics.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "susy.hpp"
#include "tridiag.hpp"
