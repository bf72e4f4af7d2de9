#ifndef GENINV_GENINV_HPP
#define GENINV_GENINV_HPP

// Dense generalized-inverse toolkit: Moore-Penrose, group, Drazin, core,
// dual core, core-EP and dual core-EP inverses over exact Gaussian-rational
// or complex floating-point scalars, computed through full-rank
// decomposition chains, explicit power formulas, and shifted-resolvent
// limits (exact and numeric), with defining-equation verification.

#include "geninv/error.hpp"
#include "geninv/rational.hpp"
#include "geninv/scalar.hpp"
#include "geninv/matrix.hpp"
#include "geninv/polynomial.hpp"
#include "geninv/decompose.hpp"
#include "geninv/inverses.hpp"
#include "geninv/verify.hpp"
#include "geninv/limits.hpp"
#include "geninv/io.hpp"

#endif // GENINV_GENINV_HPP
