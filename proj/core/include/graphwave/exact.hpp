#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <string>
#include <utility>

namespace graphwave {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// C(n, k) with the usual convention that out-of-range k gives zero.
BigInt binomial(long n, long k);

double to_double(const BigRational& r);

// An element a + b*sqrt(2) of Q(sqrt 2).  Neumann vertex matrices have
// rational entries and balanced three-way splitters bring in sqrt(2)/2,
// so transition amplitudes along a path live in this field and can be
// accumulated without rounding.
class QuadRational {
public:
  QuadRational() = default;
  QuadRational(int v) : a_(v) {}
  QuadRational(long v) : a_(v) {}
  explicit QuadRational(BigRational a) : a_(std::move(a)) {}
  QuadRational(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadRational sqrt2(const BigRational& coeff = 1) { return QuadRational(0, coeff); }

  const BigRational& rational_part() const { return a_; }
  const BigRational& sqrt2_part() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadRational operator-() const { return QuadRational(-a_, -b_); }
  QuadRational& operator+=(const QuadRational& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadRational& operator-=(const QuadRational& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadRational& operator*=(const QuadRational& o);

  friend QuadRational operator+(QuadRational x, const QuadRational& y) { return x += y; }
  friend QuadRational operator-(QuadRational x, const QuadRational& y) { return x -= y; }
  friend QuadRational operator*(QuadRational x, const QuadRational& y) { return x *= y; }
  friend bool operator==(const QuadRational& x, const QuadRational& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  double value() const;
  std::string str() const;

private:
  BigRational a_ = 0;
  BigRational b_ = 0;
};

struct QuadComplex {
  QuadRational re, im;

  QuadComplex() = default;
  QuadComplex(QuadRational r) : re(std::move(r)) {}
  QuadComplex(QuadRational r, QuadRational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  QuadComplex conj() const { return {re, -im}; }
  QuadRational squared_modulus() const { return re * re + im * im; }
  std::complex<double> value() const { return {re.value(), im.value()}; }

  QuadComplex& operator+=(const QuadComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QuadComplex& operator*=(const QuadComplex& o) {
    QuadRational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend QuadComplex operator+(QuadComplex x, const QuadComplex& y) { return x += y; }
  friend QuadComplex operator*(QuadComplex x, const QuadComplex& y) { return x *= y; }
  friend bool operator==(const QuadComplex& x, const QuadComplex& y) {
    return x.re == y.re && x.im == y.im;
  }
};

// Best rational p/q with q <= max_den within tol of x, if one exists.
std::optional<BigRational> recognize_rational(double x, long max_den = 64, double tol = 1e-12);

// Recover a + b*sqrt(2) from a floating point value, preferring pure
// rationals and small denominators.  Used to promote user-supplied vertex
// matrices to exact arithmetic when their entries allow it.
std::optional<QuadRational> recognize_quad(double x, long max_den = 64, double tol = 1e-12);

}  // namespace graphwave
