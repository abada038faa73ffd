#include "signrank/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace signrank {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational q;
  q = x;  // mpq_set_d is exact
  return q;
}

Rational rational_round(double x, const Integer& max_denominator) {
  if (max_denominator < 1) throw DomainError("rational_round: max_denominator must be >= 1");
  const Rational target = exact_rational(x);
  if (target.get_den() <= max_denominator) return target;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = target.get_num(), d = target.get_den();
  for (;;) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer rem = n - a * d;
    n = d;
    d = rem;
  }
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), Integer(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
  const Rational semi = make_rational(p0 + k * p1, q0 + k * q1);
  const Rational conv = make_rational(p1, q1);
  const Rational err_semi = abs(Rational(semi - target));
  const Rational err_conv = abs(Rational(conv - target));
  const int c = cmp(err_conv, err_semi);
  if (c < 0) return conv;
  if (c > 0) return semi;
  return conv.get_den() <= semi.get_den() ? conv : semi;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  Integer num, den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(s, num)
                      : parse_integer(s.substr(0, slash), num) &&
                            parse_integer(s.substr(slash + 1), den);
  if (!ok) throw DomainError("not a rational: \"" + std::string(text) + "\"");
  return make_rational(num, den);
}

bool is_square_free(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p <= d / p; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadElem::QuadElem(Rational r, Rational s, std::int64_t d)
    : r_(std::move(r)), s_(std::move(s)), d_(d) {
  if (!is_square_free(d_))
    throw DomainError("Q(sqrt " + std::to_string(d_) + "): d must be a positive square-free integer");
  r_.canonicalize();
  s_.canonicalize();
  if (d_ == 1) {
    r_ += s_;
    s_ = 0;
  }
}

QuadElem QuadElem::from_rational(Rational r, std::int64_t d) { return QuadElem(std::move(r), 0, d); }

double QuadElem::to_double() const {
  return r_.get_d() + s_.get_d() * std::sqrt(static_cast<double>(d_));
}

void QuadElem::check_field(const QuadElem& b) const {
  if (d_ != b.d_)
    throw DomainError("mixed fields: Q(sqrt " + std::to_string(d_) + ") and Q(sqrt " +
                      std::to_string(b.d_) + ")");
}

QuadElem QuadElem::operator-() const {
  QuadElem out = *this;
  out.r_ = -r_;
  out.s_ = -s_;
  return out;
}

QuadElem& QuadElem::operator+=(const QuadElem& b) {
  check_field(b);
  r_ += b.r_;
  s_ += b.s_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& b) {
  check_field(b);
  r_ -= b.r_;
  s_ -= b.s_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& b) {
  check_field(b);
  Rational r = r_ * b.r_ + Rational(d_) * s_ * b.s_;
  Rational s = r_ * b.s_ + s_ * b.r_;
  r_ = std::move(r);
  s_ = std::move(s);
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& b) {
  check_field(b);
  if (b.is_zero()) throw DomainError("division by zero in Q(sqrt " + std::to_string(d_) + ")");
  // 1/(r + s sqrt d) = (r - s sqrt d) / (r^2 - d s^2); the norm is nonzero
  // because d is not a perfect square (or s = 0 when d = 1).
  const Rational norm = b.r_ * b.r_ - Rational(d_) * b.s_ * b.s_;
  Rational r = (r_ * b.r_ - Rational(d_) * s_ * b.s_) / norm;
  Rational s = (s_ * b.r_ - r_ * b.s_) / norm;
  r_ = std::move(r);
  s_ = std::move(s);
  return *this;
}

bool operator==(const QuadElem& a, const QuadElem& b) {
  a.check_field(b);
  return a.r_ == b.r_ && a.s_ == b.s_;
}

std::strong_ordering operator<=>(const QuadElem& a, const QuadElem& b) {
  switch (quad_sign(a - b)) {
    case Sign::Negative: return std::strong_ordering::less;
    case Sign::Positive: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

Sign quad_sign(const QuadElem& x) {
  const Sign sr = sign_of(x.r());
  const Sign ss = sign_of(x.s());
  if (ss == Sign::Zero) return sr;
  if (sr == Sign::Zero || sr == ss) return ss;
  // opposite signs: the part with the larger square dominates
  const Rational r2 = x.r() * x.r();
  const Rational ds2 = Rational(x.field()) * x.s() * x.s();
  const int c = cmp(r2, ds2);
  if (c > 0) return sr;
  if (c < 0) return ss;
  return Sign::Zero;
}

QuadElem quad_arith(const QuadElem& a, const QuadElem& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw DomainError("unknown arithmetic operation");
}

QuadElem abs(const QuadElem& x) { return quad_sign(x) == Sign::Negative ? -x : x; }

std::string to_string(const QuadElem& x) {
  if (x.is_rational()) return to_string(x.r());
  std::ostringstream os;
  os << to_string(x.r()) << (sgn(x.s()) < 0 ? " - " : " + ") << to_string(abs(x.s()))
     << "*sqrt(" << x.field() << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, Sign s) { return os << to_char(s); }

}  // namespace signrank
