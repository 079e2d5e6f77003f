#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qclo::unicode {

inline constexpr char32_t kReplacementChar = 0xFFFD;

struct Decoded {
  std::u32string code_points;
  // Byte offset of each code point plus one past-the-end entry, so the bytes
  // of code points [i, j) are text[byte_offsets[i] .. byte_offsets[j]).
  std::vector<std::size_t> byte_offsets;
};

// Decodes UTF-8; every invalid byte yields one U+FFFD.
Decoded decode_with_offsets(std::string_view text);
std::u32string decode(std::string_view text);

std::size_t length(std::string_view text);  // in code points

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Substring addressed in code points; clamps to the end of the string.
std::string substr(std::string_view text, std::size_t pos, std::size_t count);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
// Letters and digits: ASCII alphanumerics plus any non-ASCII code point that
// is not whitespace or listed punctuation.
bool is_word(char32_t cp);

// Case mapping covers ASCII, Latin-1 and Latin Extended-A; other code points
// pass through unchanged.
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
bool is_upper(char32_t cp);

// Code-point-wise case fold of a UTF-8 string.
std::string lower(std::string_view text);

}  // namespace qclo::unicode
