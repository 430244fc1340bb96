#pragma once

#include "analytic.hpp"
#include "corrections.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "oracle.hpp"
#include "quantum_numbers.hpp"
#include "radial_table.hpp"
#include "specfun.hpp"
#include "units.hpp"
#include "validation.hpp"
