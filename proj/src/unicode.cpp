#include "qclo/unicode.hpp"

namespace qclo::unicode {

namespace {

// Returns the number of bytes consumed; writes the decoded code point.
// Invalid sequences consume one byte and decode to U+FFFD.
std::size_t decode_one(std::string_view text, std::size_t pos, char32_t& out) {
  const auto byte = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    out = b0;
    return 1;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    out = kReplacementChar;
    return 1;
  }
  if (pos + len > text.size()) {
    out = kReplacementChar;
    return 1;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      out = kReplacementChar;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinByLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    out = kReplacementChar;
    return 1;
  }
  out = cp;
  return len;
}

}  // namespace

Decoded decode_with_offsets(std::string_view text) {
  Decoded d;
  d.code_points.reserve(text.size());
  d.byte_offsets.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    d.byte_offsets.push_back(pos);
    pos += decode_one(text, pos, cp);
    d.code_points.push_back(cp);
  }
  d.byte_offsets.push_back(text.size());
  return d;
}

std::u32string decode(std::string_view text) {
  return decode_with_offsets(text).code_points;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = 0;
    pos += decode_one(text, pos, cp);
    ++n;
  }
  return n;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append(out, cp);
  return out;
}

std::string substr(std::string_view text, std::size_t pos, std::size_t count) {
  const Decoded d = decode_with_offsets(text);
  const std::size_t n = d.code_points.size();
  if (pos >= n) return {};
  const std::size_t last = pos + count < n ? pos + count : n;
  return std::string(
      text.substr(d.byte_offsets[pos], d.byte_offsets[last] - d.byte_offsets[pos]));
}

bool is_space(char32_t cp) {
  if (cp <= 0x20) return true;  // controls count as separators
  switch (cp) {
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    if (is_space(cp) || cp == 0x7F) return false;
    const bool digit = cp >= U'0' && cp <= U'9';
    const bool alpha = (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z');
    return !digit && !alpha;
  }
  if (cp >= 0xA1 && cp <= 0xBF) {
    // Latin-1 symbols, except ordinal indicators, superscripts, fractions, µ.
    switch (cp) {
      case 0xAA:
      case 0xB2:
      case 0xB3:
      case 0xB5:
      case 0xB9:
      case 0xBA:
      case 0xBC:
      case 0xBD:
      case 0xBE:
        return false;
      default:
        return true;
    }
  }
  if (cp == 0xD7 || cp == 0xF7) return true;
  if (cp >= 0x2010 && cp <= 0x2027) return true;   // dashes, quotes, daggers
  if (cp >= 0x2030 && cp <= 0x205E) return true;   // permille .. punct tags
  if (cp >= 0x2190 && cp <= 0x2BFF) return true;   // arrows, math, symbols
  if (cp >= 0x3001 && cp <= 0x303F) return true;   // CJK punctuation
  if (cp >= 0xFE50 && cp <= 0xFE6F) return true;   // small form variants
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;   // fullwidth forms
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;
  return false;
}

bool is_word(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'A' && cp <= U'Z') ||
           (cp >= U'a' && cp <= U'z');
  }
  return !is_space(cp) && !is_punct(cp);
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A alternates upper/lower; skip the dotted/dotless i pair,
  // kra, the deprecated apostrophe-n, and Y with diaeresis.
  if (cp >= 0x100 && cp <= 0x177) {
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149) return cp;
    if (cp <= 0x137 || cp >= 0x14A) return (cp % 2 == 0) ? cp + 1 : cp;
    return (cp % 2 == 1) ? cp + 1 : cp;  // 0x139..0x148
  }
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  return cp;
}

char32_t to_upper(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return cp - 0x20;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;
  if (cp == 0xFF) return 0x178;
  if (cp >= 0x100 && cp <= 0x177) {
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149) return cp;
    if (cp <= 0x137 || cp >= 0x14A) return (cp % 2 == 1) ? cp - 1 : cp;
    return (cp % 2 == 0) ? cp - 1 : cp;
  }
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 0) ? cp - 1 : cp;
  return cp;
}

bool is_upper(char32_t cp) { return to_lower(cp) != cp; }

std::string lower(std::string_view text) {
  std::u32string cps = decode(text);
  for (char32_t& cp : cps) cp = to_lower(cp);
  return encode(cps);
}

}  // namespace qclo::unicode
