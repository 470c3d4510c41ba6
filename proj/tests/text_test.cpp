#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mteval/text.hpp"

using namespace mteval;

TEST_CASE("split_words on runs of whitespace") {
  CHECK(split_words("a b  c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_words("  leading\ttab\nnewline ") ==
        std::vector<std::string>{"leading", "tab", "newline"});
  CHECK(split_words("").empty());
  CHECK(split_words("   ").empty());
  CHECK(count_words("one two three") == 3);
  CHECK(count_words("") == 0);
}

TEST_CASE("codepoint_count handles multi-byte text") {
  CHECK(codepoint_count("abc") == 3);
  CHECK(codepoint_count("我希望") == 3);
  CHECK(codepoint_count("a我b") == 3);
  CHECK(codepoint_count("») ") == 3);
}

TEST_CASE("decode_utf8 round trips code point counts") {
  auto cps = decode_utf8("héllo 世界");
  CHECK(cps.size() == 8);
  CHECK(cps[1] == U'é');
  CHECK(cps[6] == U'世');
}

TEST_CASE("sentence_ranges splits after final punctuation plus space") {
  auto r = sentence_ranges("First one. Second two? Third!");
  REQUIRE(r.size() == 3);
  std::string text = "First one. Second two? Third!";
  CHECK(text.substr(r[0].first, r[0].second - r[0].first) == "First one. ");
  CHECK(text.substr(r[1].first, r[1].second - r[1].first) == "Second two? ");
  CHECK(text.substr(r[2].first, r[2].second - r[2].first) == "Third!");
}

TEST_CASE("sentence_ranges keeps abbreviised interiors together") {
  // a mid-text period not followed by whitespace does not split
  CHECK(sentence_ranges("Version 2.4 shipped").size() == 1);
  CHECK(sentence_ranges("no terminal punctuation at all").size() == 1);
  // fullwidth finals split too
  CHECK(sentence_ranges("你好。 再见！").size() == 2);
}

TEST_CASE("sentence ranges cover the string exactly") {
  const std::string text = "A b c. D e? F g";
  auto r = sentence_ranges(text);
  std::size_t pos = 0;
  for (auto [b, e] : r) {
    CHECK(b == pos);
    pos = e;
  }
  CHECK(pos == text.size());
}

TEST_CASE("final_symbol picks the longest matching suffix") {
  const std::vector<std::string> symbols = {".", "?", "!", "\"", "。", "»"};
  CHECK(final_symbol("done.", symbols) == std::string("."));
  CHECK(final_symbol("what?", symbols) == std::string("?"));
  CHECK(final_symbol("好了。", symbols) == std::string("。"));
  CHECK(final_symbol("quote\"", symbols) == std::string("\""));
  CHECK_FALSE(final_symbol("no end", symbols).has_value());
  CHECK_FALSE(final_symbol("", symbols).has_value());
}

TEST_CASE("rtrim strips trailing ASCII whitespace only") {
  CHECK(rtrim("abc  ") == "abc");
  CHECK(rtrim("abc\t\n") == "abc");
  CHECK(rtrim("  abc") == "  abc");
  CHECK(rtrim("") == "");
}
