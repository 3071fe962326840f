#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace stw::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at `pos` and advances it. A malformed
// sequence yields U+FFFD and consumes a single byte.
char32_t decode_next(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_punctuation(char32_t cp);
bool is_space(char32_t cp);
char32_t to_lower(char32_t cp);

}  // namespace stw::unicode
