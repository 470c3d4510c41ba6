#include "mteval/text.hpp"

#include <array>

namespace mteval {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    if (i < text.size()) ++n;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
  }
  return n;
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char b = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = b;
    if ((b & 0x80) == 0) {
      len = 1;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    } else {
      out.push_back(b);  // stray continuation byte
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      out.push_back(b);
      ++i;
      continue;
    }
    bool valid = true;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cb = static_cast<unsigned char>(text[i + k]);
      if ((cb & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (cb & 0x3F);
    }
    if (!valid) {
      out.push_back(b);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string rtrim(std::string_view text) {
  std::size_t end = text.size();
  while (end > 0 && is_ascii_space(text[end - 1])) --end;
  return std::string(text.substr(0, end));
}

std::vector<std::pair<std::size_t, std::size_t>> sentence_ranges(
    std::string_view text) {
  static const std::array<std::string_view, 6> kFinals = {
      ".", "?", "!", "\xE3\x80\x82", "\xEF\xBC\x9F", "\xEF\xBC\x81"};

  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t matched = 0;
    for (const auto& s : kFinals) {
      if (text.compare(i, s.size(), s) == 0 && s.size() > matched) {
        matched = s.size();
      }
    }
    if (matched > 0) {
      std::size_t after = i + matched;
      if (after >= text.size() || is_ascii_space(text[after])) {
        while (after < text.size() && is_ascii_space(text[after])) ++after;
        ranges.emplace_back(start, after);
        start = after;
        i = after;
        continue;
      }
    }
    ++i;
  }
  if (start < text.size()) ranges.emplace_back(start, text.size());
  return ranges;
}

std::optional<std::string> final_symbol(
    std::string_view text, const std::vector<std::string>& symbols) {
  std::optional<std::string> best;
  for (const auto& s : symbols) {
    if (s.empty() || s.size() > text.size()) continue;
    if (text.compare(text.size() - s.size(), s.size(), s) == 0) {
      if (!best || s.size() > best->size()) best = s;
    }
  }
  return best;
}

}  // namespace mteval
