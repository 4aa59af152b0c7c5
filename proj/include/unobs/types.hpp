#pragma once

#include <compare>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace unobs {

/// External bus label as it appears in input files. Always positive; 0 is
/// reserved for the dummy bus of an augmented graph.
using BusId = int;

/// Ordered set of bus labels. Ordering is by label, which gives every report a
/// deterministic layout.
using BusSet = std::set<BusId>;

inline constexpr BusId kDummyBusId = 0;

/// Malformed input or a violated precondition the caller could have checked.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown that only happens for measure-zero reactance choices.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative integer extended with +infinity. Used for connectivities and
/// sparsities that are infinite when no attack exists.
class ExtendedInt {
 public:
  constexpr ExtendedInt(int value) : value_(value) {}  // NOLINT(implicit)

  static constexpr ExtendedInt infinity() { return ExtendedInt(kInf); }

  constexpr bool is_finite() const { return value_ != kInf; }

  int value() const {
    if (!is_finite()) throw std::logic_error("value() of infinite ExtendedInt");
    return value_;
  }

  constexpr ExtendedInt plus(int k) const { return is_finite() ? ExtendedInt(value_ + k) : *this; }

  std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

  friend constexpr bool operator==(ExtendedInt, ExtendedInt) = default;
  friend constexpr auto operator<=>(ExtendedInt a, ExtendedInt b) { return a.value_ <=> b.value_; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int value_;
};

}  // namespace unobs
