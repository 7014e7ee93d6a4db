#ifndef PROCEVO_UNICODE_HPP
#define PROCEVO_UNICODE_HPP

#include <string>
#include <string_view>

namespace procevo::unicode {

bool is_valid_utf8(std::string_view text) noexcept;

/// Returns the NFC form of UTF-8 `text`. Throws InvalidTerm on malformed UTF-8.
std::string to_nfc(std::string_view text);

bool is_nfc(std::string_view text);

/// Decodes valid UTF-8 into code points. Malformed sequences become U+FFFD.
std::u32string decode(std::string_view text);

void append_utf8(std::string& out, char32_t cp);

} // namespace procevo::unicode

#endif
