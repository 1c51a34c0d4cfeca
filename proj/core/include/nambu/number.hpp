#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace nambu {

using Rational = boost::multiprecision::cpp_rational;

/// Scalar constant: an exact rational, or a double once float semantics
/// have entered a subtree. Any arithmetic involving a double result is
/// a double.
class Number {
 public:
  Number() : exact_(true), rat_(0) {}
  Number(long long n) : exact_(true), rat_(n) {}
  explicit Number(Rational r) : exact_(true), rat_(std::move(r)) {}

  static Number real(double d) {
    Number n;
    n.exact_ = false;
    n.dbl_ = d;
    return n;
  }
  static Number rational(long long num, long long den) {
    return Number(Rational(num, den));
  }

  bool exact() const { return exact_; }
  const Rational& rat() const { return rat_; }

  double as_double() const {
    return exact_ ? rat_.convert_to<double>() : dbl_;
  }

  bool is_zero() const { return exact_ ? rat_.is_zero() : dbl_ == 0.0; }
  bool is_one() const { return exact_ ? rat_ == 1 : dbl_ == 1.0; }
  bool is_negative() const { return exact_ ? rat_ < 0 : dbl_ < 0.0; }

  Number operator-() const {
    return exact_ ? Number(Rational(-rat_)) : real(-dbl_);
  }

  friend Number operator+(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) return Number(Rational(a.rat_ + b.rat_));
    return real(a.as_double() + b.as_double());
  }
  friend Number operator-(const Number& a, const Number& b) {
    return a + (-b);
  }
  friend Number operator*(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) return Number(Rational(a.rat_ * b.rat_));
    return real(a.as_double() * b.as_double());
  }
  friend Number operator/(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_ && !b.is_zero())
      return Number(Rational(a.rat_ / b.rat_));
    return real(a.as_double() / b.as_double());
  }

  Number pow(int k) const {
    if (k == 0) return Number(1);
    if (exact_) {
      using boost::multiprecision::cpp_int;
      cpp_int num = boost::multiprecision::numerator(rat_);
      cpp_int den = boost::multiprecision::denominator(rat_);
      cpp_int pn = boost::multiprecision::pow(num, std::abs(k));
      cpp_int pd = boost::multiprecision::pow(den, std::abs(k));
      if (k > 0) return Number(Rational(pn, pd));
      if (pn == 0) return real(std::pow(0.0, k));  // 0^-k -> inf
      return Number(Rational(pd, pn));
    }
    return real(std::pow(dbl_, k));
  }

  friend bool operator==(const Number& a, const Number& b) {
    if (a.exact_ != b.exact_) return false;
    return a.exact_ ? a.rat_ == b.rat_ : a.dbl_ == b.dbl_;
  }

  /// Deterministic total order, used only for canonical sorting.
  friend int compare(const Number& a, const Number& b) {
    double da = a.as_double(), db = b.as_double();
    if (da < db) return -1;
    if (da > db) return 1;
    if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
    if (a.exact_) {
      if (a.rat_ < b.rat_) return -1;
      if (b.rat_ < a.rat_) return 1;
    }
    return 0;
  }

  std::string str() const {
    if (!exact_) {
      char buf[32];
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, dbl_);
      (void)ec;
      return std::string(buf, p);
    }
    std::string s = boost::multiprecision::numerator(rat_).str();
    auto den = boost::multiprecision::denominator(rat_);
    if (den != 1) s += "/" + den.str();
    return s;
  }

 private:
  bool exact_;
  Rational rat_;
  double dbl_ = 0.0;
};

}  // namespace nambu
