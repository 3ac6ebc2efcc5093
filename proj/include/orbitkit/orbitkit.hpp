#pragma once

#include <orbitkit/algebra.hpp>
#include <orbitkit/coadjoint.hpp>
#include <orbitkit/csv.hpp>
#include <orbitkit/damped_map.hpp>
#include <orbitkit/errors.hpp>
#include <orbitkit/invariants.hpp>
#include <orbitkit/linalg.hpp>
#include <orbitkit/matrix_exp.hpp>
#include <orbitkit/orbit_dynamics.hpp>
#include <orbitkit/realization.hpp>
#include <orbitkit/types.hpp>
