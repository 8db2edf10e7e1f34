#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace localflow {

/// Exact rational with 64-bit numerator and denominator, kept reduced with a
/// positive denominator. Arithmetic is carried out in 128 bits and throws
/// std::overflow_error when the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(runtime/explicit)

  /// Accepts "p", "p/q", or a finite decimal such as "0.125" or "-2.5".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  /// True if the denominator is a power of two.
  bool is_dyadic() const { return (den_ & (den_ - 1)) == 0; }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Least common multiple; throws std::overflow_error on overflow.
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

/// Sink weight of the augmented graph: a positive rational or +infinity.
class Epsilon {
 public:
  explicit Epsilon(Rational value);
  static Epsilon infinite() { return Epsilon(); }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  const Rational& value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Epsilon& a, const Epsilon& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Epsilon() : infinite_(true) {}

  Rational value_;
  bool infinite_ = false;
};

}  // namespace localflow
