#pragma once

#include <compare>
#include <stdexcept>

namespace manet {

// A totally ordered value with an explicit top element. Used for link
// lifetimes of relatively static links and for bottleneck values of paths
// that have no constraining element.
template <typename T>
class Extended {
 public:
  constexpr Extended(T value) : value_(value), infinite_(false) {}  // NOLINT(implicit)

  static constexpr Extended infinity() { return Extended(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  constexpr const T& value() const {
    if (infinite_) throw std::logic_error("Extended::value() on infinity");
    return value_;
  }

  // Finite value, or `fallback` for the top element.
  constexpr T value_or(T fallback) const { return infinite_ ? fallback : value_; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr auto operator<=>(const Extended& a, const Extended& b)
      -> std::compare_three_way_result_t<T> {
    using Order = std::compare_three_way_result_t<T>;
    if (a.infinite_ && b.infinite_) return Order::equivalent;
    if (a.infinite_) return Order::greater;
    if (b.infinite_) return Order::less;
    return a.value_ <=> b.value_;
  }

  friend constexpr Extended min(const Extended& a, const Extended& b) { return b < a ? b : a; }

 private:
  constexpr Extended() : value_{}, infinite_(true) {}

  T value_;
  bool infinite_;
};

}  // namespace manet
