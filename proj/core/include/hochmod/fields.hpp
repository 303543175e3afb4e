#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hochmod/error.hpp"
#include "hochmod/field_spec.hpp"
#include "hochmod/rational.hpp"

namespace hochmod {

// Every field type below models the same interface: value_type, zero/one,
// add/sub/mul/neg/inv, is_zero/eq, a canonical total order `less`, and
// string conversion. Arithmetic is exact. Generic code takes the field by
// value (all three are cheap to copy).

/// The rational numbers.
class Rationals {
 public:
  using value_type = Rational;
  /// Elimination keeps rows integral and primitive instead of dividing.
  static constexpr bool fraction_free = true;

  Rationals() = default;
  explicit Rationals(const FieldSpec& spec);

  FieldSpec spec() const { return FieldSpec::rationals(); }
  std::uint64_t characteristic() const { return 0; }

  value_type zero() const { return {}; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return v; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return a.inverse(); }
  value_type div(const value_type& a, const value_type& b) const { return a / b; }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }

  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool is_one(const value_type& a) const { return a.is_one(); }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  bool less(const value_type& a, const value_type& b) const { return a < b; }

  std::string format(const value_type& a) const { return a.to_string(); }
  value_type parse(std::string_view text) const;

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

/// The prime field F_p, p < 2^31, elements stored as representatives 0..p-1.
class PrimeField {
 public:
  using value_type = std::uint32_t;
  static constexpr bool fraction_free = false;

  explicit PrimeField(std::uint64_t p);
  explicit PrimeField(const FieldSpec& spec);

  FieldSpec spec() const { return FieldSpec::prime(p_); }
  std::uint64_t characteristic() const { return p_; }
  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  void add_mul(value_type& acc, value_type a, value_type b) const {
    acc = static_cast<value_type>((acc + std::uint64_t(a) * b) % p_);
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool eq(value_type a, value_type b) const { return a == b; }
  bool less(value_type a, value_type b) const { return a < b; }

  std::string format(value_type a) const { return std::to_string(a); }
  /// Accepts integers (any sign, any size) and fractions "a/b".
  value_type parse(std::string_view text) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// An element of Q(zeta_n): coefficients of a polynomial of degree < phi(n).
struct CyclotomicElement {
  std::vector<Rational> coeffs;
  friend bool operator==(const CyclotomicElement&, const CyclotomicElement&) = default;
};

/// Q adjoined a primitive n-th root of unity, as Q[x] / Phi_n(x).
class CyclotomicField {
 public:
  using value_type = CyclotomicElement;
  static constexpr bool fraction_free = false;

  explicit CyclotomicField(std::uint64_t n);
  explicit CyclotomicField(const FieldSpec& spec);

  FieldSpec spec() const { return FieldSpec::cyclotomic(data_->order); }
  std::uint64_t characteristic() const { return 0; }
  std::size_t degree() const { return data_->degree; }
  /// Coefficients of Phi_n, constant term first, monic.
  const std::vector<Rational>& modulus() const { return data_->phi; }

  value_type zero() const { return value_type{std::vector<Rational>(data_->degree)}; }
  value_type one() const { return from_int(1); }
  value_type from_int(long long v) const;
  value_type from_rational(const Rational& r) const;
  /// The primitive root zeta = x mod Phi_n.
  value_type generator() const;

  value_type add(const value_type& a, const value_type& b) const;
  value_type sub(const value_type& a, const value_type& b) const;
  value_type mul(const value_type& a, const value_type& b) const;
  value_type neg(const value_type& a) const;
  value_type inv(const value_type& a) const;
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  void add_mul(value_type& acc, const value_type& a, const value_type& b) const {
    acc = add(acc, mul(a, b));
  }

  bool is_zero(const value_type& a) const;
  bool is_one(const value_type& a) const { return eq(a, one()); }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  bool less(const value_type& a, const value_type& b) const;

  /// "[c0,c1,...]" with rational coefficients.
  std::string format(const value_type& a) const;
  /// Accepts the bracket form or a plain rational.
  value_type parse(std::string_view text) const;

  friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) {
    return a.data_->order == b.data_->order;
  }

 private:
  struct Data {
    std::uint64_t order;
    std::size_t degree;
    std::vector<Rational> phi;
  };
  void reduce(std::vector<Rational>& poly) const;
  std::shared_ptr<const Data> data_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<long long> cyclotomic_polynomial(std::uint64_t n);

/// Calls fn with the concrete field object described by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  spec.validate();
  switch (spec.kind) {
    case FieldKind::prime:
      return std::forward<Fn>(fn)(PrimeField(spec.parameter));
    case FieldKind::cyclotomic:
#ifdef HOCHMOD_WITH_CYCLOTOMIC
      return std::forward<Fn>(fn)(CyclotomicField(spec.parameter));
#else
      throw InvalidField("cyclotomic fields are disabled in this build");
#endif
    case FieldKind::rationals:
      break;
  }
  return std::forward<Fn>(fn)(Rationals{});
}

}  // namespace hochmod
