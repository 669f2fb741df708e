// Umbrella header.
#pragma once

#include "freecurves/catalog.hpp"
#include "freecurves/finite_groups.hpp"
#include "freecurves/group_ring.hpp"
#include "freecurves/hyperbolic_oracle.hpp"
#include "freecurves/intersection.hpp"
#include "freecurves/magnus.hpp"
#include "freecurves/records.hpp"
#include "freecurves/reproduce.hpp"
#include "freecurves/surfaces.hpp"
#include "freecurves/survey.hpp"
#include "freecurves/witness.hpp"
#include "freecurves/words.hpp"
