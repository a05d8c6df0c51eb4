#ifndef DYSOB_DYADIC_INDEX_HPP
#define DYSOB_DYADIC_INDEX_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dysob {

/// A dyadic interval 2^{-level}[pos, pos+1) of the unit interval.
/// level >= 0 and 0 <= pos < 2^level.
struct DyadicIndex {
  int level = 0;
  std::int64_t pos = 0;

  constexpr DyadicIndex() = default;
  constexpr DyadicIndex(int level_, std::int64_t pos_) : level(level_), pos(pos_) {}

  [[nodiscard]] double measure() const { return std::ldexp(1.0, -level); }
  [[nodiscard]] double left_endpoint() const { return std::ldexp(static_cast<double>(pos), -level); }

  [[nodiscard]] constexpr DyadicIndex left_child() const { return {level + 1, 2 * pos}; }
  [[nodiscard]] constexpr DyadicIndex right_child() const { return {level + 1, 2 * pos + 1}; }
  [[nodiscard]] constexpr bool is_root() const { return level == 0; }
  [[nodiscard]] constexpr bool is_left_child() const { return level > 0 && (pos & 1) == 0; }
  [[nodiscard]] constexpr bool is_right_child() const { return level > 0 && (pos & 1) == 1; }

  [[nodiscard]] constexpr DyadicIndex parent() const {
    if (level == 0) throw std::invalid_argument("root interval has no parent");
    return {level - 1, pos >> 1};
  }

  /// True when `other` is contained in *this (nesting is decidable from the
  /// index pair alone).
  [[nodiscard]] constexpr bool contains(const DyadicIndex& other) const {
    return other.level >= level && (other.pos >> (other.level - level)) == pos;
  }

  [[nodiscard]] constexpr bool strictly_contains(const DyadicIndex& other) const {
    return other.level > level && (other.pos >> (other.level - level)) == pos;
  }

  [[nodiscard]] constexpr bool disjoint_from(const DyadicIndex& other) const {
    return !contains(other) && !other.contains(*this);
  }

  /// Ancestor at the given coarser level.
  [[nodiscard]] constexpr DyadicIndex ancestor_at(int coarse_level) const {
    if (coarse_level > level) throw std::invalid_argument("ancestor level must not exceed level");
    return {coarse_level, pos >> (level - coarse_level)};
  }

  friend constexpr auto operator<=>(const DyadicIndex&, const DyadicIndex&) = default;

  [[nodiscard]] std::string to_string() const {
    return "(" + std::to_string(level) + "," + std::to_string(pos) + ")";
  }
};

constexpr DyadicIndex kUnitInterval{0, 0};

/// Value of the Haar function h_J on a strictly contained interval I:
/// +|J|^{-1/2} on the left child side, -|J|^{-1/2} on the right.
inline double haar_value_on(const DyadicIndex& J, const DyadicIndex& I) {
  if (!J.strictly_contains(I)) throw std::invalid_argument("haar_value_on requires I strictly inside J");
  const DyadicIndex child = I.ancestor_at(J.level + 1);
  const double mag = std::sqrt(std::ldexp(1.0, J.level));
  return child.is_left_child() ? mag : -mag;
}

}  // namespace dysob

#endif  // DYSOB_DYADIC_INDEX_HPP
