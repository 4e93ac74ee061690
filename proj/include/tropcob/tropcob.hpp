#pragma once

#include "tropcob/errors.hpp"
#include "tropcob/rational.hpp"
#include "tropcob/lattice.hpp"
#include "tropcob/polytope.hpp"
#include "tropcob/torus.hpp"
#include "tropcob/ellipsoid.hpp"
#include "tropcob/theta.hpp"
#include "tropcob/complex.hpp"
#include "tropcob/intersect.hpp"
#include "tropcob/perturb.hpp"
#include "tropcob/cobordism.hpp"
