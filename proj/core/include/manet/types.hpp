#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace manet {

using NodeId = std::uint32_t;
using SessionId = std::uint32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double distance_squared(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Energy held as an integral number of picojoules so that battery debits and
// ledger credits balance exactly.
class Energy {
 public:
  constexpr Energy() = default;

  static constexpr Energy from_picojoules(std::int64_t pj) { return Energy(pj); }
  static Energy from_joules(double joules) {
    return Energy(static_cast<std::int64_t>(std::llround(joules * 1e12)));
  }

  constexpr std::int64_t picojoules() const { return pj_; }
  constexpr double joules() const { return static_cast<double>(pj_) * 1e-12; }
  constexpr bool is_zero() const { return pj_ == 0; }

  constexpr Energy& operator+=(Energy o) {
    pj_ += o.pj_;
    return *this;
  }
  constexpr Energy& operator-=(Energy o) {
    pj_ -= o.pj_;
    return *this;
  }
  friend constexpr Energy operator+(Energy a, Energy b) { return a += b; }
  friend constexpr Energy operator-(Energy a, Energy b) { return a -= b; }
  friend constexpr auto operator<=>(Energy, Energy) = default;

 private:
  constexpr explicit Energy(std::int64_t pj) : pj_(pj) {}
  std::int64_t pj_ = 0;
};

enum class Protocol { Forp, Lbr, Mmbcr };

constexpr std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::Forp: return "FORP";
    case Protocol::Lbr: return "LBR";
    case Protocol::Mmbcr: return "MMBCR";
  }
  return "?";
}

}  // namespace manet
