#pragma once

// Exact scalars: arbitrary-precision rationals (GMP) and elements of a real
// quadratic field Q(sqrt d).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "signrank/matrix.hpp"

namespace signrank {

using Integer = mpz_class;
/// Always canonical: gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using RationalMatrix = Matrix<Rational>;

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr char to_char(Sign s) {
  return s == Sign::Positive ? '+' : (s == Sign::Negative ? '-' : '0');
}
constexpr Sign sign_of_int(long v) {
  return v > 0 ? Sign::Positive : (v < 0 ? Sign::Negative : Sign::Zero);
}
inline Sign sign_of(const Rational& q) { return sign_of_int(sgn(q)); }
inline Sign sign_of(const Integer& z) { return sign_of_int(sgn(z)); }
inline Sign sign_of(double x) { return x > 0 ? Sign::Positive : (x < 0 ? Sign::Negative : Sign::Zero); }

/// Builds num/den in canonical form. Throws DomainError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Exact value of a finite double. Throws DomainError on NaN or infinity.
Rational exact_rational(double x);

/// Best rational approximation of x with denominator at most max_denominator:
/// no p/q with q <= max_denominator is strictly closer. Ties go to the smaller
/// denominator. Throws DomainError on non-finite x or max_denominator < 1.
Rational rational_round(double x, const Integer& max_denominator);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
/// Accepts "p", "-p", "p/q" (q nonzero), surrounding whitespace ignored.
Rational parse_rational(std::string_view text);

bool is_square_free(std::int64_t d);

/// r + s*sqrt(d) with d a positive square-free integer. For d = 1 the
/// irrational part is folded into r so the representation stays unique.
class QuadElem {
 public:
  QuadElem() = default;  // 0 in Q (d = 1)
  QuadElem(Rational r, Rational s, std::int64_t d);
  /// The rational r viewed as an element of Q(sqrt d).
  static QuadElem from_rational(Rational r, std::int64_t d);

  const Rational& r() const noexcept { return r_; }
  const Rational& s() const noexcept { return s_; }
  std::int64_t field() const noexcept { return d_; }
  bool is_zero() const { return sgn(r_) == 0 && sgn(s_) == 0; }
  bool is_rational() const { return sgn(s_) == 0; }
  double to_double() const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& b);
  QuadElem& operator-=(const QuadElem& b);
  QuadElem& operator*=(const QuadElem& b);
  QuadElem& operator/=(const QuadElem& b);

  friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
  friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
  friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
  friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }

  /// Structural equality; throws DomainError when the fields differ.
  friend bool operator==(const QuadElem& a, const QuadElem& b);
  /// Exact ordering through quad_sign of the difference.
  friend std::strong_ordering operator<=>(const QuadElem& a, const QuadElem& b);

 private:
  void check_field(const QuadElem& b) const;

  Rational r_ = 0;
  Rational s_ = 0;
  std::int64_t d_ = 1;
};

/// Exact sign of r + s*sqrt(d) by comparing r^2 with d*s^2.
Sign quad_sign(const QuadElem& x);

enum class ArithOp { Add, Sub, Mul, Div };
QuadElem quad_arith(const QuadElem& a, const QuadElem& b, ArithOp op);

QuadElem abs(const QuadElem& x);

std::string to_string(const QuadElem& x);
std::ostream& operator<<(std::ostream& os, const QuadElem& x);
std::ostream& operator<<(std::ostream& os, Sign s);

}  // namespace signrank
