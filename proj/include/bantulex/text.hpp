#pragma once
// Small UTF-8 and string helpers. The corpus is Latin-script Bantu
// orthography; folding and diacritic handling only need to cover the Latin
// blocks (ASCII, Latin-1 Supplement, Latin Extended-A/B, combining marks).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bantulex {

// Decodes UTF-8 to code points. Invalid bytes decode as U+FFFD.
std::vector<std::uint32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<std::uint32_t>& cps);

// Locale-independent case folding for the Latin range (ASCII A-Z plus the
// common precomposed Latin letters). Non-Latin code points pass through.
std::string fold_case(std::string_view s);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

} // namespace bantulex
