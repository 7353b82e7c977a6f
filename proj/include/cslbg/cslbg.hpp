#pragma once

// Convenience header pulling in the whole library.

#include "cslbg/attenuation.hpp"
#include "cslbg/constants.hpp"
#include "cslbg/core.hpp"
#include "cslbg/errors.hpp"
#include "cslbg/fit.hpp"
#include "cslbg/gamma.hpp"
#include "cslbg/io.hpp"
#include "cslbg/muon.hpp"
#include "cslbg/rng.hpp"
#include "cslbg/sensitivity.hpp"
#include "cslbg/svg.hpp"
#include "cslbg/thermal.hpp"
