#pragma once

#include <compare>
#include <limits>
#include <string>

namespace pprox {

/// A real number or +infinity.
///
/// Values of proper convex functions and their conjugates live in
/// ]-inf, +inf]. NaN and -inf are rejected at construction so that every
/// arithmetic result below is well defined.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v);  // NOLINT(google-explicit-constructor): reals embed into ExtReal.

  static constexpr ExtReal infinity() { return ExtReal(Tag{}); }

  constexpr bool is_finite() const { return !inf_; }
  constexpr bool is_infinite() const { return inf_; }

  /// Finite value; throws DomainError on +infinity.
  double value() const;

  /// The value as a double, +inf encoded as std::numeric_limits<double>::infinity().
  constexpr double to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator+(ExtReal a, double b) { return a + ExtReal(b); }
  friend ExtReal operator+(double a, ExtReal b) { return ExtReal(a) + b; }

  /// c * this for c > 0. Throws DomainError for c <= 0 (0 * inf is undefined).
  ExtReal scaled(double c) const;

  friend constexpr bool operator==(ExtReal a, ExtReal b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.inf_ && b.inf_) return std::partial_ordering::equivalent;
    if (a.inf_) return std::partial_ordering::greater;
    if (b.inf_) return std::partial_ordering::less;
    return a.v_ <=> b.v_;
  }
  friend constexpr bool operator==(ExtReal a, double b) { return !a.inf_ && a.v_ == b; }
  friend constexpr std::partial_ordering operator<=>(ExtReal a, double b) {
    if (a.inf_) return std::partial_ordering::greater;
    return a.v_ <=> b;
  }

  std::string to_string() const;

 private:
  struct Tag {};
  constexpr explicit ExtReal(Tag) : inf_(true) {}

  double v_ = 0.0;
  bool inf_ = false;
};

}  // namespace pprox
