#pragma once

#include <vector>

#include "pwmod/polynomial.hpp"
#include "pwmod/rational.hpp"

namespace pwmod {

/// Number of distinct real roots of p in the half-open interval (a, b].
/// Exact (Sturm chain over the rationals).
int count_roots(const Poly<Rat>& p, const Rat& a, const Rat& b);

/// True iff p(x) > 0 for every x in [a, b]. Exact.
bool poly_positive_on(const Poly<Rat>& p, const Rat& a, const Rat& b);

/// True iff |p(x)| < bound for every x in [a, b]. Exact.
bool poly_abs_below(const Poly<Rat>& p, const Rat& bound, const Rat& a, const Rat& b);

}  // namespace pwmod
