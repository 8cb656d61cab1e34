#include "bantulex/text.hpp"

#include <doctest.h>

using namespace bantulex;

TEST_CASE("utf8 round trip") {
    const std::string s = "thibitar\xC4\xA9 *t\xC3\xA0t\xC3\xB9 ng'ombe";
    CHECK(utf8_encode(utf8_decode(s)) == s);
}

TEST_CASE("fold_case lowers ascii and latin letters") {
    CHECK(fold_case("Ona") == "ona");
    CHECK(fold_case("NGOMBE") == "ngombe");
    CHECK(fold_case("M\xC5\xA8NO") == "m\xC5\xA9no"); // Ũ -> ũ
    CHECK(fold_case("\xC3\x80rgentina") == "\xC3\xA0rgentina");
}

TEST_CASE("trim and split") {
    CHECK(trim("  a b \r\n") == "a b");
    CHECK(trim("") == "");
    const auto f = split("a\tb\t\tc", '\t');
    REQUIRE(f.size() == 4);
    CHECK(f[0] == "a");
    CHECK(f[2] == "");
    CHECK(join({"a", "b"}, ", ") == "a, b");
}
