#pragma once

// Umbrella header for the hypertoric toolkit: exact lattice combinatorics
// of vector configurations, elliptic-curve torus arithmetic with theta
// evaluation, hyperplane arrangements with smoothness and fixed-point
// reports, the three flavors of lambda-graded coordinate rings, the
// monomial-ideal fixed-locus verification, and numeric checks of the
// moment-map identities.

#include "htk/arrangement.hpp"
#include "htk/branch_ring.hpp"
#include "htk/circuits.hpp"
#include "htk/config.hpp"
#include "htk/elliptic.hpp"
#include "htk/errors.hpp"
#include "htk/geometry.hpp"
#include "htk/hikita.hpp"
#include "htk/ideal.hpp"
#include "htk/matrix.hpp"
#include "htk/numeric.hpp"
#include "htk/snf.hpp"
#include "htk/sparse_poly.hpp"
#include "htk/theta.hpp"
