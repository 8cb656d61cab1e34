#pragma once
// Loading, validation, and persistence of all external data files.
//
// All formats are line-oriented UTF-8 TSV with LF line endings, chosen to be
// diff-able and human-auditable. Loading is single-threaded and
// deterministic; loaded collections are immutable afterwards and safe to
// share across threads.
//
// Embedding file:
//   #dim=<d>
//   language<TAB>lemma<TAB>pos<TAB>noun_class_or_-<TAB>gloss_or_-<TAB>v1 v2 ... vd
// Reconstruction file:   proto_form<TAB>gloss(optional)
// Wordlist (ASJP) file:  language<TAB>concept<TAB>form
// Language metadata:     code<TAB>name<TAB>zone

#include "bantulex/types.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bantulex {

struct LoadedEmbeddings {
    std::vector<EmbeddingRecord> records; // file order, after dedup
    std::size_t dimension = 0;
    std::vector<std::string> warnings;
};

// Loads an embedding file. Duplicate (language, lemma, pos) keys keep the
// first occurrence and emit a warning. When `known_languages` is non-empty,
// any record with a language outside the set is fatal: silently dropping a
// language would corrupt the shared-across-N-languages thresholds downstream.
LoadedEmbeddings load_embeddings(const std::string& path,
                                 std::optional<std::size_t> expected_dim = std::nullopt,
                                 const std::vector<LanguageMeta>& known_languages = {});

void write_embeddings(const std::string& path,
                      const std::vector<EmbeddingRecord>& records,
                      std::size_t dimension);

struct LoadedReconstructions {
    std::vector<ReconstructionEntry> entries; // verbatim, file order
    std::vector<std::string> warnings;
};

LoadedReconstructions load_reconstructions(const std::string& path);

// The canonical 40-item basic-vocabulary concept list. A run may override it
// with a concept file (one concept per line, '#' comments).
const std::vector<std::string>& default_asjp_concepts();
std::vector<std::string> load_concept_list(const std::string& path);

struct LoadedAsjp {
    std::vector<AsjpEntry> entries;
    std::vector<std::string> warnings;
};

// Concepts are validated against the configured closed list; an unknown
// concept is fatal and the error message lists the closed list.
LoadedAsjp load_asjp(const std::string& path, const std::vector<std::string>& concepts);

std::vector<LanguageMeta> load_language_meta(const std::string& path);
void write_language_meta(const std::string& path, const std::vector<LanguageMeta>& languages);

// Stoplists and lexicons: one entry per line, '#' comments, case-folded.
std::set<std::string> load_wordlist(const std::string& path);

// Locale-independent float formatting (shortest round-trip representation).
std::string format_double(double v);
double parse_double(const std::string& s); // throws on malformed input

} // namespace bantulex
