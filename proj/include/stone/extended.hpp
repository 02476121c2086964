#pragma once

#include <compare>
#include <limits>
#include <ostream>

namespace stone {

/// A nonnegative real or the tagged value +inf. Lebesgue numbers and
/// uniform moduli are infinite for covers containing the whole space.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double value) : value_(value) {}  // NOLINT: implicit from finite

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; +inf maps to the IEEE infinity only at this boundary.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(const ExtReal& a,
                                                     const ExtReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend ExtReal operator+(const ExtReal& a, double b) {
    return a.infinite_ ? infinity() : ExtReal(a.value_ + b);
  }
  friend ExtReal operator-(const ExtReal& a, double b) {
    return a.infinite_ ? infinity() : ExtReal(a.value_ - b);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& v) {
    if (v.infinite_) return os << "inf";
    return os << v.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace stone
