#pragma once

// Umbrella header for the simplexdyn library: quadratic operators on the
// standard simplex, preservation conditions, fixed-point and stability
// analysis, Lyapunov and bifurcation diagnostics, built-in model families
// with their invariant-set structure, and serialization.

#include "simplexdyn/bifurcation.hpp"
#include "simplexdyn/conditions.hpp"
#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/eigen_small.hpp"
#include "simplexdyn/fixed_points.hpp"
#include "simplexdyn/invariant_sets.hpp"
#include "simplexdyn/io.hpp"
#include "simplexdyn/lyapunov.hpp"
#include "simplexdyn/map1d.hpp"
#include "simplexdyn/models.hpp"
#include "simplexdyn/period.hpp"
#include "simplexdyn/preservation.hpp"
#include "simplexdyn/qop.hpp"
#include "simplexdyn/rng.hpp"
#include "simplexdyn/simplex.hpp"
