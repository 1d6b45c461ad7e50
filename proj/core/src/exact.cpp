#include "graphwave/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "graphwave/errors.hpp"

namespace graphwave {

BigInt binomial(long n, long k) {
  if (n < 0) throw PreconditionError("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt res = 1;
  for (long i = 1; i <= k; ++i) {
    res *= n - k + i;
    res /= i;
  }
  return res;
}

double to_double(const BigRational& r) { return r.convert_to<double>(); }

QuadRational& QuadRational::operator*=(const QuadRational& o) {
  BigRational a = a_ * o.a_ + 2 * b_ * o.b_;
  b_ = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  return *this;
}

double QuadRational::value() const {
  return to_double(a_) + to_double(b_) * std::numbers::sqrt2;
}

std::string QuadRational::str() const {
  std::ostringstream os;
  os << a_;
  if (b_ != 0) os << " + (" << b_ << ")*sqrt2";
  return os.str();
}

std::optional<BigRational> recognize_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Walk the continued fraction of x; the first convergent within tol wins.
  double rem = x;
  BigInt h0 = 1, k0 = 0;  // previous convergent
  BigInt h1 = 0, k1 = 1;  // one before that, seeded so the loop starts at floor(x)
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rem);
    if (std::abs(fl) > 9e15) return std::nullopt;
    BigInt a = static_cast<long long>(fl);
    BigInt h = a * h0 + h1;
    BigInt k = a * k0 + k1;
    if (k > max_den) return std::nullopt;
    BigRational cand(h, k);
    if (std::abs(to_double(cand) - x) <= tol) return cand;
    double frac = rem - fl;
    if (frac < 1e-15) return std::nullopt;
    rem = 1.0 / frac;
    h1 = h0;
    k1 = k0;
    h0 = h;
    k0 = k;
  }
  return std::nullopt;
}

std::optional<QuadRational> recognize_quad(double x, long max_den, double tol) {
  if (auto r = recognize_rational(x, max_den, tol)) return QuadRational(*r);
  if (!std::isfinite(x)) return std::nullopt;
  // Clear denominators: x*d should be R + P*sqrt2 with integer R, P for some
  // d <= max_den.  P cannot be guessed by rounding x*d/sqrt2 (the rational
  // part skews it), so walk the candidates; the allowance past |x*d| covers
  // moderate cancellation between the two parts.
  for (long d = 1; d <= max_den; ++d) {
    double y = x * static_cast<double>(d);
    long p_max = max_den + static_cast<long>(std::ceil(2.0 * std::abs(y)));
    for (long p = -p_max; p <= p_max; ++p) {
      if (p == 0) continue;  // pure rationals were handled above
      double t = y - static_cast<double>(p) * std::numbers::sqrt2;
      double r = std::round(t);
      if (std::abs(t - r) > tol * static_cast<double>(d) || std::abs(r) > 9e15) continue;
      return QuadRational(BigRational(static_cast<long long>(r), d), BigRational(p, d));
    }
  }
  return std::nullopt;
}

}  // namespace graphwave
