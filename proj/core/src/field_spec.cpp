#include "hochmod/field_spec.hpp"

#include <charconv>

#include "hochmod/error.hpp"

namespace hochmod {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

void FieldSpec::validate() const {
  switch (kind) {
    case FieldKind::rationals:
      return;
    case FieldKind::prime:
      if (!is_prime(parameter))
        throw InvalidField("field characteristic " + std::to_string(parameter) + " is not prime");
      if (parameter >= (1ULL << 31))
        throw InvalidField("prime fields are limited to p < 2^31");
      return;
    case FieldKind::cyclotomic:
      if (parameter == 0) throw InvalidField("cyclotomic order must be positive");
      if (parameter > 1000) throw InvalidField("cyclotomic order too large");
      return;
  }
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case FieldKind::rationals:
      return "Q";
    case FieldKind::prime:
      return "F" + std::to_string(parameter);
    case FieldKind::cyclotomic:
      return "cyclotomic-" + std::to_string(parameter);
  }
  return "?";
}

namespace {

std::uint64_t parse_number(std::string_view digits, std::string_view whole) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw InvalidField("cannot parse field '" + std::string(whole) + "'");
  return value;
}

}  // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
  FieldSpec spec;
  if (text == "Q" || text == "QQ" || text == "rationals") {
    spec = rationals();
  } else if (text.starts_with("cyclotomic-")) {
    spec = cyclotomic(parse_number(text.substr(11), text));
  } else if (text.starts_with("Fp")) {
    spec = prime(parse_number(text.substr(2), text));
  } else if (text.starts_with("F")) {
    spec = prime(parse_number(text.substr(1), text));
  } else {
    throw InvalidField("unknown field '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

}  // namespace hochmod
