#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hochmod {

enum class FieldKind { rationals, prime, cyclotomic };

/// Description of a base field: Q, F_p, or Q(zeta_n).
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t parameter = 0;  // p for prime, n for cyclotomic

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) { return {FieldKind::prime, p}; }
  static FieldSpec cyclotomic(std::uint64_t n) { return {FieldKind::cyclotomic, n}; }

  /// Throws InvalidField on a non-prime p, p >= 2^31, or n == 0.
  void validate() const;

  std::uint64_t characteristic() const { return kind == FieldKind::prime ? parameter : 0; }

  /// "Q", "F5", "cyclotomic-8".
  std::string to_string() const;

  /// Accepts "Q", "F<p>", "Fp<p>", "cyclotomic-<n>".
  static FieldSpec parse(std::string_view text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

}  // namespace hochmod
