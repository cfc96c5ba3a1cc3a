#ifndef PAIRALG_HALF_INT_HPP
#define PAIRALG_HALF_INT_HPP

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pairalg {

/// Exact half-integer stored as twice its value. Used for angular momenta,
/// projections and tensor ranks.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int value) : twice_(2 * value) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  /// Integer value; only meaningful when is_integer().
  constexpr int as_int() const { return twice_ / 2; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

private:
  int twice_ = 0;
};

inline constexpr HalfInt half(int twice) { return HalfInt::from_twice(twice); }

/// 2j+1 for a half-integer j.
inline constexpr int multiplicity(HalfInt j) { return j.twice() + 1; }

/// (-1)^x for integral x; half-integral exponents are a logic error.
inline int phase(HalfInt x) {
  if (!x.is_integer()) throw std::logic_error("phase of half-integral exponent " + x.str());
  return (std::abs(x.as_int()) % 2 == 0) ? 1 : -1;
}

inline constexpr int phase(int x) { return (x % 2 == 0) ? 1 : -1; }

/// A projection m is compatible with momentum j.
inline constexpr bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && (j.twice() - m.twice()) % 2 == 0 && m.twice() <= j.twice() &&
         -m.twice() <= j.twice();
}

/// Value stored as four times itself; quasispins of bosonic levels take
/// quarter-integer values.
class QuarterInt {
public:
  constexpr QuarterInt() = default;
  static constexpr QuarterInt from_four(int four) {
    QuarterInt q;
    q.four_ = four;
    return q;
  }
  constexpr int four() const { return four_; }
  constexpr double value() const { return 0.25 * four_; }
  friend constexpr QuarterInt operator+(QuarterInt a, QuarterInt b) {
    return from_four(a.four_ + b.four_);
  }
  friend constexpr QuarterInt operator-(QuarterInt a, QuarterInt b) {
    return from_four(a.four_ - b.four_);
  }
  friend constexpr auto operator<=>(QuarterInt, QuarterInt) = default;

  std::string str() const {
    if (four_ % 4 == 0) return std::to_string(four_ / 4);
    if (four_ % 2 == 0) return std::to_string(four_ / 2) + "/2";
    return std::to_string(four_) + "/4";
  }
  friend std::ostream& operator<<(std::ostream& os, QuarterInt q) { return os << q.str(); }

private:
  int four_ = 0;
};

}  // namespace pairalg

#endif
