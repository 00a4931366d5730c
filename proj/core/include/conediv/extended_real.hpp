#pragma once

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace conediv {

/// Value in (-inf, +inf]. +inf is a legitimate result (degenerate divergences,
/// endpoint limits), never an error state. NaN is not representable.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) { assert(!std::isnan(v_)); }

  static ExtReal infinity() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !is_infinite(); }

  /// Underlying double; +inf when infinite.
  double value() const { return v_; }

  /// mass * endpoint under the 0 * inf = 0 convention.
  ExtReal scaled_by_mass(double mass) const {
    assert(mass >= 0.0);
    if (mass == 0.0) return ExtReal(0.0);
    return ExtReal(mass * v_);
  }

  ExtReal operator+(ExtReal o) const { return ExtReal(v_ + o.v_); }
  ExtReal& operator+=(ExtReal o) {
    v_ += o.v_;
    return *this;
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }

 private:
  double v_ = 0.0;
};

/// Fixed 17-significant-digit formatting; +inf prints as the literal "inf".
inline std::string format_value(ExtReal x) {
  if (x.is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x.value());
  return buf;
}

inline std::string format_value(double x) { return format_value(ExtReal(x)); }

}  // namespace conediv
