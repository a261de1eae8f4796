#include "ilab/wide_int.hpp"

#include <algorithm>

#include "ilab/error.hpp"

namespace ilab {

std::string to_string(Int value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // work in unsigned so that the minimum value does not overflow on negation
  unsigned __int128 magnitude =
      negative ? static_cast<unsigned __int128>(-(value + 1)) + 1 : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view text) {
  if (text.empty()) throw InputError("empty integer literal");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw InputError("integer literal has no digits: " + std::string(text));
  Int value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') throw InputError("bad integer literal: " + std::string(text));
    const int digit = c - '0';
    if (!checked_mul(value, 10, value) || !checked_add(value, negative ? -digit : digit, value)) {
      throw InputError("integer literal overflows 128 bits: " + std::string(text));
    }
  }
  return value;
}

}  // namespace ilab
