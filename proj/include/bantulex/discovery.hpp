#pragma once
// Cross-lingual cognate candidate extraction and coherence scoring.
//
// Two pathways produce candidates and are unioned:
//   surface-shared   the same case-folded lemma attested in enough languages
//   neighbor-cluster connected components of the record graph whose edges
//                    join records of different languages that are mutual
//                    nearest cross-lingual neighbors or clear the cosine
//                    threshold, in the centered space
// Candidates from the two pathways that share a member merge and carry
// provenance "both".
//
// Everything here is deterministic: identical inputs and configuration
// produce byte-identical candidate lists.

#include "bantulex/geometry.hpp"
#include "bantulex/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bantulex {

enum class Provenance { SurfaceShared, NeighborCluster, Both };
std::string provenance_to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

// Annotation from the second embedding source; NotEvaluated until
// cross_source_agreement runs.
enum class Agreement { NotEvaluated, Strong, Weak, NotEvaluable };
std::string agreement_to_string(Agreement a);
Agreement agreement_from_string(const std::string& s);

// Pairwise cross-lingual cosine statistics within a candidate, computed in
// the centered space. Defined only when at least one cross-lingual pair
// exists. stdev is the population standard deviation.
struct CoherenceStats {
    double mean_sim = 0.0;
    double min_sim = 0.0;
    double stdev_sim = 0.0;
};

struct Member {
    std::string language;
    std::string lemma; // surface form as loaded

    friend bool operator<(const Member& a, const Member& b) {
        return a.language != b.language ? a.language < b.language : a.lemma < b.lemma;
    }
    friend bool operator==(const Member& a, const Member& b) {
        return a.language == b.language && a.lemma == b.lemma;
    }
};

struct CognateCandidate {
    std::string root;            // most frequent member surface form, ties lexicographic
    std::vector<Member> members; // sorted, unique
    std::size_t language_count = 0;
    Pos pos = Pos::Other;        // majority POS over contributing records
    std::optional<CoherenceStats> coherence;
    Provenance provenance = Provenance::SurfaceShared;
    Agreement agreement = Agreement::NotEvaluated;
    std::optional<std::string> gloss; // majority gloss over contributing records

    // Indices into the record collection the candidate was built from; empty
    // for candidates loaded back from a TSV.
    std::vector<std::size_t> record_indices;
};

// One candidate per case-folded lemma attested in >= min_languages distinct
// languages.
std::vector<CognateCandidate> surface_shared_candidates(
    const std::vector<EmbeddingRecord>& records, std::size_t min_languages = 5);

// Connected components of the neighbor graph spanning >= min_languages.
// Records whose centered vector is zero (single-record languages) cannot
// carry direction and are left out of the graph. sim_threshold must lie in
// (0, 1).
std::vector<CognateCandidate> neighbor_cluster_candidates(const CenteredSpace& space,
                                                          double sim_threshold = 0.80,
                                                          std::size_t min_languages = 5);

// Union of the two pathways; overlapping candidates merge with provenance
// Both. Candidates must have been built over the same record collection.
std::vector<CognateCandidate> merge_candidates(const std::vector<CognateCandidate>& surface,
                                               const std::vector<CognateCandidate>& neighbor,
                                               const std::vector<EmbeddingRecord>& records);

void compute_coherence(std::vector<CognateCandidate>& candidates, const CenteredSpace& space);

// Orders candidates by descending (language_count, mean_sim), then ascending
// root; stable and total.
void score_and_rank(std::vector<CognateCandidate>& candidates);

// Annotates each candidate strong/weak/not-evaluable from an independent
// embedding source. A candidate whose members are covered fewer than twice
// in the second source (or with no cross-lingual covered pair) is
// not-evaluable and never strong. Returns the number of strong candidates.
std::size_t cross_source_agreement(std::vector<CognateCandidate>& candidates,
                                   const std::vector<EmbeddingRecord>& second_source,
                                   double strong_threshold);

std::size_t count_zero_vectors(const CenteredSpace& space);

// Resolves candidate members back to record indices by (language, folded
// lemma); used when candidates were loaded from a TSV.
std::vector<std::size_t> resolve_member_records(const CognateCandidate& candidate,
                                                const std::vector<EmbeddingRecord>& records);

void write_candidates(const std::string& path, const std::vector<CognateCandidate>& candidates);
std::vector<CognateCandidate> read_candidates(const std::string& path);

} // namespace bantulex
