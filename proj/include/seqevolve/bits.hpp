#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqevolve {

using Bit = std::uint8_t;
using Bits = std::vector<std::uint8_t>;

inline Bits bits_from_string(const std::string& s) {
  Bits out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("bad bit character '" + std::string(1, ch) + "' in \"" + s + "\"");
    out.push_back(ch == '1' ? 1 : 0);
  }
  return out;
}

inline std::string bits_to_string(const Bits& b) {
  std::string s;
  s.reserve(b.size());
  for (Bit v : b) s.push_back(v ? '1' : '0');
  return s;
}

// MSB-first hex of the bit string; the last nibble is zero-padded on the right.
inline std::string bits_to_hex(const Bits& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve((b.size() + 3) / 4);
  for (std::size_t i = 0; i < b.size(); i += 4) {
    unsigned v = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      v <<= 1;
      if (i + j < b.size() && b[i + j]) v |= 1;
    }
    s.push_back(digits[v]);
  }
  return s;
}

inline Bits bits_from_hex(const std::string& hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4)
    throw std::invalid_argument("hex string length does not match bit length");
  Bits out;
  out.reserve(length);
  for (char ch : hex) {
    unsigned v;
    if (ch >= '0' && ch <= '9') v = unsigned(ch - '0');
    else if (ch >= 'a' && ch <= 'f') v = unsigned(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F') v = unsigned(ch - 'A' + 10);
    else throw std::invalid_argument("bad hex digit");
    for (int j = 3; j >= 0; --j) {
      if (out.size() < length) out.push_back(Bit((v >> j) & 1));
      else if ((v >> j) & 1) throw std::invalid_argument("nonzero padding in hex string");
    }
  }
  return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace seqevolve
