#pragma once

#include <compare>
#include <limits>

namespace augustin {

/// A real number or +infinity. Infinity is a distinct state, never produced by
/// floating overflow, and absorbs under addition. The degenerate bit records
/// that a clamped trace went into the value and is sticky through sums.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;

  static constexpr ExtendedReal finite(double v, bool degenerate = false) {
    return ExtendedReal(v, false, degenerate);
  }
  static constexpr ExtendedReal infinity() { return ExtendedReal(0.0, true, false); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool degenerate() const { return degenerate_; }

  /// +inf maps to std::numeric_limits<double>::infinity().
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedReal(a.value_ + b.value_, false, a.degenerate_ || b.degenerate_);
  }
  ExtendedReal& operator+=(ExtendedReal o) { return *this = *this + o; }

  /// Scaling by a positive weight.
  friend constexpr ExtendedReal operator*(double w, ExtendedReal a) {
    if (a.infinite_) return infinity();
    return ExtendedReal(w * a.value_, false, a.degenerate_);
  }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr ExtendedReal(double v, bool inf, bool degenerate)
      : value_(v), infinite_(inf), degenerate_(degenerate) {}

  double value_ = 0.0;
  bool infinite_ = false;
  bool degenerate_ = false;
};

}  // namespace augustin
