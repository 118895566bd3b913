#pragma once

#include "orbit_lab/bijection.hpp"
#include "orbit_lab/isotropy.hpp"
#include "orbit_lab/normal_form.hpp"
