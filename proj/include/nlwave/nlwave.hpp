#ifndef NLWAVE_NLWAVE_HPP
#define NLWAVE_NLWAVE_HPP

#include "nlwave/acceptance.hpp"
#include "nlwave/asymptotics.hpp"
#include "nlwave/inequalities.hpp"
#include "nlwave/io.hpp"
#include "nlwave/oracles.hpp"
#include "nlwave/solver.hpp"
#include "nlwave/spectral.hpp"
#include "nlwave/symbols.hpp"

#endif
