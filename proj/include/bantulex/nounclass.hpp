#pragma once
// Cross-lingual noun-class analysis: per-language class centroids, within-
// vs between-class similarity, a seeded permutation test, and prefix
// extraction.
//
// Class similarity defaults to centroid pairs (robust to class-size
// imbalance); the pairwise mode compares raw member vectors instead, for
// sensitivity analysis.

#include "bantulex/geometry.hpp"
#include "bantulex/stats.hpp"
#include "bantulex/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bantulex {

using LanguageClass = std::pair<std::string, int>;

struct ClassCentroidSet {
    std::map<LanguageClass, Vec> centroids;        // present iff count >= min_members
    std::map<LanguageClass, std::size_t> counts;   // every observed (language, class)
    std::size_t min_members = 3;
};

// Arithmetic mean of the centered vectors of each language's class members.
// Fatal when the space contains no noun records at all.
ClassCentroidSet class_centroids(const CenteredSpace& space, std::size_t min_members = 3);

struct ClassPairs {
    std::vector<double> values;   // cosine per cross-lingual pair
    std::vector<char> is_within;  // same class = within, different = between
    double within_mean = 0.0;
    double between_mean = 0.0;
    std::map<int, double> per_class_min_within;
    std::map<int, double> per_class_mean_within;
    std::map<int, std::size_t> per_class_languages;
};

// Pairs of class centroids from different languages. Fatal when no
// cross-lingual same-class pair exists, or when every pair falls in a single
// class (between-class mean undefined).
ClassPairs within_between_similarity(const ClassCentroidSet& centroids);

// Same statistics over raw member vectors instead of centroids.
ClassPairs within_between_pairwise(const CenteredSpace& space, std::size_t min_members = 3);

struct ClassTestResult {
    double within_mean = 0.0;
    double between_mean = 0.0;
    std::map<int, double> per_class_min_within;
    double p_value = 1.0;
    int n_permutations = 0;
    std::uint64_t seed = 0;
};

// One-sided test of within-class > between-class cross-lingual similarity,
// sharing the seeded permutation engine.
ClassTestResult class_similarity_test(const ClassPairs& pairs, int n_perm, std::uint64_t seed);

// Longest common leading substring of each (language, class) cell's lemmas,
// trimmed to at most 4 characters; an empty prefix reports as "-".
std::map<LanguageClass, std::string> extract_class_prefixes(
    const std::vector<EmbeddingRecord>& records, std::size_t min_members = 1);

// Class report TSV (class, n_languages, within_min, within_mean) followed by
// a test summary line.
void write_class_report(const std::string& path, const ClassPairs& pairs,
                        const ClassTestResult& test);

// Prefix table TSV: one row per class, one column per language.
void write_prefix_table(const std::string& path,
                        const std::map<LanguageClass, std::string>& prefixes);

} // namespace bantulex
