#include "hochmod/linalg.hpp"

#include <limits>

namespace hochmod {

std::size_t checked_power(std::size_t d, std::size_t n) {
  constexpr std::size_t limit = std::numeric_limits<index_t>::max();
  std::size_t p = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (d != 0 && p > limit / d) throw ResourceError("tensor power " + std::to_string(d) + "^" + std::to_string(n) + " is too large", limit, limit);
    p *= d;
  }
  return p;
}

std::size_t tensor_index(std::span<const std::size_t> indices, std::size_t d) {
  std::size_t idx = 0;
  for (std::size_t i : indices) {
    if (i >= d) throw DimensionMismatch("tensor index " + std::to_string(i) + " out of range for dimension " + std::to_string(d));
    idx = idx * d + i;
  }
  return idx;
}

std::vector<std::size_t> tensor_digits(std::size_t index, std::size_t d, std::size_t n) {
  std::vector<std::size_t> digits(n);
  for (std::size_t k = n; k-- > 0;) {
    digits[k] = index % d;
    index /= d;
  }
  if (index != 0) throw DimensionMismatch("flat tensor index out of range");
  return digits;
}

}  // namespace hochmod
