#include "bantulex/text.hpp"

namespace bantulex {

std::vector<std::uint32_t> utf8_decode(std::string_view s) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        std::uint32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c & 0xE0) == 0xC0 && i + 1 < n && (s[i + 1] & 0xC0) == 0x80) {
            cp = (static_cast<std::uint32_t>(c & 0x1F) << 6) |
                 (static_cast<std::uint32_t>(s[i + 1]) & 0x3F);
            len = 2;
        } else if ((c & 0xF0) == 0xE0 && i + 2 < n && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80) {
            cp = (static_cast<std::uint32_t>(c & 0x0F) << 12) |
                 ((static_cast<std::uint32_t>(s[i + 1]) & 0x3F) << 6) |
                 (static_cast<std::uint32_t>(s[i + 2]) & 0x3F);
            len = 3;
        } else if ((c & 0xF8) == 0xF0 && i + 3 < n && (s[i + 1] & 0xC0) == 0x80 &&
                   (s[i + 2] & 0xC0) == 0x80 && (s[i + 3] & 0xC0) == 0x80) {
            cp = (static_cast<std::uint32_t>(c & 0x07) << 18) |
                 ((static_cast<std::uint32_t>(s[i + 1]) & 0x3F) << 12) |
                 ((static_cast<std::uint32_t>(s[i + 2]) & 0x3F) << 6) |
                 (static_cast<std::uint32_t>(s[i + 3]) & 0x3F);
            len = 4;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::vector<std::uint32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (std::uint32_t cp : cps) {
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
    return out;
}

namespace {

std::uint32_t fold_cp(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    // Latin-1 Supplement uppercase.
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
    // Latin Extended-A/B mostly alternates upper/lower.
    if (cp >= 0x0100 && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
    if (cp == 0x0178) return 0x00FF;
    if (cp >= 0x0179 && cp <= 0x017E && (cp % 2) == 1) return cp + 1;
    if (cp == 0x014A) return 0x014B; // ENG
    if (cp >= 0x01CD && cp <= 0x01DC && (cp % 2) == 1) return cp + 1;
    if (cp >= 0x01DE && cp <= 0x01EF && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x01F8 && cp <= 0x021F && (cp % 2) == 0) return cp + 1;
    if (cp >= 0x0222 && cp <= 0x0233 && (cp % 2) == 0) return cp + 1;
    return cp;
}

} // namespace

std::string fold_case(std::string_view s) {
    // Fast path: pure ASCII.
    bool ascii = true;
    for (char c : s) {
        if (static_cast<unsigned char>(c) >= 0x80) { ascii = false; break; }
    }
    if (ascii) {
        std::string out(s);
        for (char& c : out) {
            if (c >= 'A' && c <= 'Z') c += 32;
        }
        return out;
    }
    auto cps = utf8_decode(s);
    for (auto& cp : cps) cp = fold_cp(cp);
    return utf8_encode(cps);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
    };
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

} // namespace bantulex
