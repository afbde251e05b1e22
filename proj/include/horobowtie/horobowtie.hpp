#pragma once

#include "bigscalar.hpp"
#include "boundary.hpp"
#include "constants.hpp"
#include "geodesy.hpp"
#include "horoball_bounds.hpp"
#include "horoproduct.hpp"
#include "norms.hpp"
#include "plane.hpp"
#include "serialize.hpp"
#include "space.hpp"
#include "tree.hpp"
