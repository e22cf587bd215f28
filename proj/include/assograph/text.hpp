#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 aware string helpers shared by name normalization and term
// extraction. Only Latin-1 Supplement and Latin Extended-A letters are folded;
// every other code point passes through unchanged.
namespace assograph::text {

std::string fold_diacritics(std::string_view utf8);

std::string to_upper_ascii(std::string_view s);
std::string to_lower_ascii(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string> split_whitespace(std::string_view s);

/// True for ASCII letters and for any byte belonging to a multi-byte UTF-8
/// sequence (non-ASCII code points are treated as letters).
inline bool is_letter_byte(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace assograph::text
