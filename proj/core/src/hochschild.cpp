#include "hochmod/hochschild.hpp"

#include <charconv>
#include <cstring>

namespace hochmod {

std::size_t default_memory_cap() {
  constexpr std::size_t fallback = 1'000'000;
  const char* env = std::getenv("HOCHMOD_MEMORY_CAP");
  if (!env || !*env) return fallback;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(env, env + std::strlen(env), v);
  if (ec != std::errc() || *p != '\0' || v == 0)
    throw ParseError("expected a positive integer", "HOCHMOD_MEMORY_CAP");
  return v;
}

}  // namespace hochmod
