#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace fa {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  /// Throws ErrorCode::DivisionByZero when `den` is zero.
  Rational(const BigInt& num, const BigInt& den);

  /// Exact binary value of a finite double (0.25 -> 1/4).
  static Rational from_double(double value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  double to_double() const { return value_.get_d(); }
  /// "n" for integers, "n/d" otherwise.
  std::string str() const;
  /// Parses "n" or "n/d"; throws ErrorCode::InvalidArgument on bad input.
  static Rational parse(const std::string& text);

  bool is_zero() const { return sgn(value_) == 0; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

/// 2^exponent for any signed exponent.
Rational pow2(int exponent);

}  // namespace fa
