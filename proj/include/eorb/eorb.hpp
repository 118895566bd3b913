#pragma once

#include "errors.hpp"
#include "flag_class.hpp"
#include "lie_core.hpp"
#include "linalg.hpp"
#include "orbit_lab.hpp"
#include "sampling.hpp"
#include "skew_spectral.hpp"
#include "symplectic.hpp"
#include "tolerance.hpp"
