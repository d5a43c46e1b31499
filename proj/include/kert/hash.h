#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace kert {

// 64-bit FNV-1a. Used for config and content digests, not for security.
inline std::uint64_t fnv1a(std::string_view data,
                           std::uint64_t state = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

inline std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

inline std::string fnv1a_hex(std::string_view data) { return to_hex(fnv1a(data)); }

}  // namespace kert
