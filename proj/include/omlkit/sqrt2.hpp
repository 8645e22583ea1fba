#pragma once

#include <string>

#include "omlkit/rational.hpp"

namespace omlkit {

/// Exact element of the quadratic field Q(sqrt2), stored as a + b*sqrt2
/// with rational a, b. Equality is exact: a + b*sqrt2 == 0 iff a == b == 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
  Scalar(int n) : a_(n), b_(0) {}  // NOLINT(google-explicit-constructor)

  static Scalar sqrt2() { return Scalar(Rat(0), Rat(1)); }

  const Rat& rational_part() const { return a_; }
  const Rat& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    return Scalar(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    return Scalar(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend Scalar operator-(const Scalar& x) { return Scalar(-x.a_, -x.b_); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    return Scalar(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    return x * y.inverse();
  }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y) {
    return (x - y).sign() < 0;
  }

  Scalar inverse() const {
    // 1/(a+b*sqrt2) = (a-b*sqrt2)/(a^2-2b^2); the norm vanishes only at 0.
    Rat n = a_ * a_ - 2 * b_ * b_;
    if (n == 0) throw DomainError("division by zero in Q(sqrt2)");
    return Scalar(a_ / n, -b_ / n);
  }

  /// Exact sign of a + b*sqrt2, decided by comparing a^2 against 2b^2.
  int sign() const {
    if (a_ == 0 && b_ == 0) return 0;
    if (a_ >= 0 && b_ >= 0) return 1;
    if (a_ <= 0 && b_ <= 0) return -1;
    bool mag = a_ * a_ > 2 * b_ * b_;  // |a| vs |b*sqrt2|
    if (a_ > 0) return mag ? 1 : -1;
    return mag ? -1 : 1;
  }

  double to_double() const {
    return static_cast<double>(a_) + static_cast<double>(b_) * 1.4142135623730951;
  }

  /// Compact form: "0", "1", "r2", "-1r2", "1/2+3/4r2". Used in atom names,
  /// so no commas or spaces.
  std::string str() const {
    if (b_ == 0) return rat_str(a_);
    std::string s2 = (b_ == 1) ? "r2" : rat_str(b_) + "r2";
    if (a_ == 0) return s2;
    return rat_str(a_) + "+" + s2;
  }

 private:
  Rat a_{0};
  Rat b_{0};
};

}  // namespace omlkit
