#pragma once

// Exact rational scalars, univariate and bivariate polynomials, Sturm
// counting, real root isolation, resultants and discriminants.

#include "sectional/bipoly.hpp"
#include "sectional/matrix.hpp"
#include "sectional/rational.hpp"
#include "sectional/resultant.hpp"
#include "sectional/sturm.hpp"
#include "sectional/unipoly.hpp"
