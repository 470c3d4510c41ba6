#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mteval {

// Tokens separated by runs of ASCII whitespace. No normalization.
std::vector<std::string> split_words(std::string_view text);

std::size_t count_words(std::string_view text);

// Number of UTF-8 code points (continuation bytes are not counted).
// Invalid bytes each count as one, so the function is total.
std::size_t codepoint_count(std::string_view text);

// Decode UTF-8 into code points; invalid bytes map to themselves.
std::vector<char32_t> decode_utf8(std::string_view text);

std::string rtrim(std::string_view text);

// Byte ranges of sentences, split after any of {. ? ! 。 ？ ！} followed by
// whitespace or end of text. Each range includes its trailing whitespace,
// so excising one range leaves the remaining text byte-intact.
std::vector<std::pair<std::size_t, std::size_t>> sentence_ranges(
    std::string_view text);

// Longest symbol in `symbols` that `text` ends with, if any.
std::optional<std::string> final_symbol(std::string_view text,
                                        const std::vector<std::string>& symbols);

}  // namespace mteval
