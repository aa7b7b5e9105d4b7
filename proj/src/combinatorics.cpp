#include "fusionassure/combinatorics.hpp"

#include "fusionassure/error.hpp"

namespace fa {

BigInt binom(long n, long r) {
  if (n < 0 || r < 0 || r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

Rational hypergeom(long total, long marked, long drawn, long hits) {
  if (total < 0 || marked < 0 || drawn < 0 || hits < 0) {
    throw Error(ErrorCode::InvalidArgument, "hypergeom arguments must be non-negative");
  }
  const BigInt denominator = binom(total, drawn);
  if (sgn(denominator) == 0) {
    throw Error(ErrorCode::DivisionByZero, "C(total, drawn) is zero");
  }
  return Rational(binom(marked, hits) * binom(total - marked, drawn - hits), denominator);
}

}  // namespace fa
