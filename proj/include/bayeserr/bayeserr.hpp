#pragma once

#include "bayeserr/bounds.hpp"
#include "bayeserr/distributions.hpp"
#include "bayeserr/error.hpp"
#include "bayeserr/estimate.hpp"
#include "bayeserr/exact.hpp"
#include "bayeserr/linalg.hpp"
#include "bayeserr/means.hpp"
#include "bayeserr/montecarlo.hpp"
#include "bayeserr/quadrature.hpp"
#include "bayeserr/random.hpp"
