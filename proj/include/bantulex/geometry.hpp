#pragma once
// Vector geometry: cosine similarity, per-language centering, and the
// language-level similarity matrix. All operations are pure functions over
// immutable inputs; accumulations run in double precision with a fixed
// summation order so results are reproducible.

#include "bantulex/types.hpp"

#include <string>
#include <vector>

namespace bantulex {

// Cosine of two equal-dimension vectors. A zero vector is rejected rather
// than smoothed: silently assigning similarity 0 would bias coherence
// statistics downstream. Result is clamped to [-1, 1].
double cosine(const Vec& u, const Vec& v);

double norm(const Vec& v);

struct CenteredSpace {
    std::vector<EmbeddingRecord> records; // vectors replaced by centered vectors
    std::vector<std::pair<std::string, Vec>> per_language_mean; // sorted by language
    std::size_t dimension = 0;

    const Vec* mean_of(const std::string& language) const;
};

// Subtracts the per-language mean embedding from every record. Within-language
// pairwise differences are unchanged; each language's centered mean has norm
// below 1e-9 * sqrt(d).
CenteredSpace center_by_language(const std::vector<EmbeddingRecord>& records);

struct SimilarityMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values; // symmetric, unit diagonal

    double at(std::size_t i, std::size_t j) const { return values[i][j]; }
    std::size_t size() const { return labels.size(); }
};

enum class MatrixMode {
    SharedLemma, // mean cosine over lemmas attested in both languages
    AllPairs,    // mean cosine over all cross-lingual record pairs
};

// Language-by-language similarity over raw (uncentered) vectors. Centering
// forces every language mean to zero, which would erase exactly the
// language-level signal the dendrogram needs, so this deliberately consumes
// the raw space. In shared-lemma mode a language pair with no lemma in
// common is fatal. Labels are sorted language codes.
SimilarityMatrix language_similarity_matrix(const std::vector<EmbeddingRecord>& records,
                                            MatrixMode mode = MatrixMode::SharedLemma);

void write_similarity_matrix(const std::string& path, const SimilarityMatrix& m);
SimilarityMatrix read_similarity_matrix(const std::string& path);

} // namespace bantulex
