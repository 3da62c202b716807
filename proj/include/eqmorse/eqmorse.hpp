#pragma once

#include "eqmorse/error.hpp"
#include "eqmorse/config.hpp"
#include "eqmorse/group.hpp"
#include "eqmorse/burnside.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/representation.hpp"
#include "eqmorse/symmetry.hpp"
#include "eqmorse/boundary.hpp"
#include "eqmorse/strata.hpp"
#include "eqmorse/zeros.hpp"
#include "eqmorse/morse.hpp"
#include "eqmorse/khovanskii.hpp"
#include "eqmorse/gauss.hpp"
#include "eqmorse/problem.hpp"
#include "eqmorse/report.hpp"
#include "eqmorse/pipeline.hpp"
#include "eqmorse/svg.hpp"
