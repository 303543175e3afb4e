#pragma once

#include <gmp.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace hochmod {

/// Exact rational number.
///
/// Values whose normalized numerator and denominator fit in 64 bits are kept
/// inline; everything else lives in a heap-allocated GMP rational. The
/// representation is canonical: a value is stored inline whenever it fits, so
/// structural equality is value equality.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1) {}
  Rational(long long value) noexcept;  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  Rational(const Rational& other);
  Rational(Rational&& other) noexcept;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  /// Parses "a", "-a", "a/b" with arbitrary-size integers.
  static Rational parse(std::string_view text);
  static Rational from_mpq(const mpq_t value);

  bool is_zero() const noexcept { return den_ != 0 && num_ == 0; }
  bool is_one() const noexcept { return den_ == 1 && num_ == 1; }
  bool is_small() const noexcept { return den_ != 0; }
  bool is_integer() const;
  int sign() const noexcept;

  /// Throws DivisionByZero on zero.
  Rational inverse() const;

  /// Writes the value into an initialized mpq_t.
  void to_mpq(mpq_t out) const;
  std::string to_string() const;

  /// Numerator and denominator as decimal strings (denominator positive).
  std::string numerator_string() const;
  std::string denominator_string() const;

  friend bool make_primitive(Rational* values, std::size_t count);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct BigTag {};
  Rational(BigTag, mpq_srcptr value);
  static Rational from_i128(__int128 num, __int128 den);
  static Rational big_binary(const Rational& a, const Rational& b, char op);
  void release() noexcept;

  union {
    std::int64_t num_;
    __mpq_struct* big_;
  };
  std::int64_t den_;  // 0 marks the heap representation
};

/// Rescales values[0..count) by one nonzero rational so that they become
/// coprime integers with the first nonzero value positive. Returns false if
/// all values are zero.
bool make_primitive(Rational* values, std::size_t count);

}  // namespace hochmod
