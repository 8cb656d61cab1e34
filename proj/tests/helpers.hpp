#pragma once
// Shared test scaffolding: fixture paths, scratch files, and the independent
// oracles the tests check the implementation against (brute-force edit
// distance, exhaustive label enumeration, rank correlation). Oracles stay
// deliberately naive and share no code with the library paths they verify.

#include "bantulex/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

namespace testutil {

inline std::string fixture(const std::string& name) {
    return std::string(BANTULEX_FIXTURES) + "/" + name;
}

// A scratch file under the build tree; contents replaced on construction.
inline std::string write_temp(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "bantulex_tests";
    std::filesystem::create_directories(dir);
    const auto path = (dir / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

inline std::string temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "bantulex_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

// Naive exponential-time edit distance, the oracle for levenshtein().
inline std::size_t edit_distance_oracle(const std::string& a, const std::string& b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    const std::size_t del = edit_distance_oracle(a.substr(1), b) + 1;
    const std::size_t ins = edit_distance_oracle(a, b.substr(1)) + 1;
    const std::size_t sub =
        edit_distance_oracle(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
    return std::min({del, ins, sub});
}

// Exact two-group permutation p-value by exhaustive enumeration of every
// distinct arrangement of the label multiset (each is equally likely under
// uniform shuffling). Returns the plain fraction P(stat >= observed); the
// add-one estimator is deliberately NOT applied here.
inline double exhaustive_two_group_p(const std::vector<double>& values,
                                     const std::vector<char>& labels) {
    auto stat = [&](const std::vector<char>& m) {
        double sw = 0.0, sb = 0.0;
        std::size_t nw = 0, nb = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (m[i]) {
                sw += values[i];
                ++nw;
            } else {
                sb += values[i];
                ++nb;
            }
        }
        return sw / static_cast<double>(nw) - sb / static_cast<double>(nb);
    };
    const double observed = stat(labels);
    std::vector<char> mask = labels;
    std::sort(mask.begin(), mask.end());
    std::size_t total = 0, ge = 0;
    do {
        ++total;
        if (stat(mask) >= observed) ++ge;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return static_cast<double>(ge) / static_cast<double>(total);
}

inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    return num / std::sqrt(dx * dy);
}

inline bantulex::EmbeddingRecord record(const std::string& lang, const std::string& lemma,
                                        bantulex::Pos pos, bantulex::Vec v) {
    bantulex::EmbeddingRecord r;
    r.language = lang;
    r.lemma = lemma;
    r.pos = pos;
    r.vector = std::move(v);
    return r;
}

} // namespace testutil
