#pragma once

#include "fusionassure/rational.hpp"

namespace fa {

/// C(n, r); zero whenever r < 0, r > n or n < 0.
BigInt binom(long n, long r);

/// C(marked, hits) C(total - marked, drawn - hits) / C(total, drawn).
/// Arguments must be non-negative (InvalidArgument otherwise); infeasible
/// draws give 0 and C(total, drawn) = 0 raises DivisionByZero.
Rational hypergeom(long total, long marked, long drawn, long hits);

}  // namespace fa
