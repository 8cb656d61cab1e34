#pragma once
// Partitioning candidates into plausible cognates vs. modern artifacts.
//
// Filtering is annotation only: no filter mutates a candidate, downstream
// stages select on verdicts. The composed verdict applies the precedence
// proper-noun > stoplist > loanword-uniform, which makes the outcome
// independent of filter application order.

#include "bantulex/discovery.hpp"

#include <set>
#include <string>
#include <vector>

namespace bantulex {

enum class Verdict { Pass, ProperNoun, LoanwordUniform, Stoplist };
std::string verdict_to_string(Verdict v);

struct FilterVerdict {
    std::string root;
    Verdict verdict = Verdict::Pass;
    std::string evidence; // human-readable justification, non-empty unless pass
};

struct FilterThresholds {
    double mean_floor = 0.95;    // loanword-uniform requires mean_sim >= floor
    double stdev_ceiling = 0.02; // ... and stdev_sim <= ceiling
};

// Proper-noun detection: the case-folded root is in the lexicon, or a
// majority of members carry the "propn" gloss marker. `records` supplies the
// gloss metadata; it may be empty when only the lexicon path is wanted.
std::vector<FilterVerdict> filter_proper_nouns(const std::vector<CognateCandidate>& candidates,
                                               const std::set<std::string>& proper_noun_lexicon,
                                               const std::vector<EmbeddingRecord>& records);

// Loanwords from a common modern source show uniformly high similarity;
// genuine cognates show the graded divergence of regular sound change.
// A candidate without coherence statistics passes unevaluated (the evidence
// string says so).
FilterVerdict flag_uniform_coherence(const CognateCandidate& candidate,
                                     const FilterThresholds& thresholds = {});

std::vector<FilterVerdict> apply_stoplist(const std::vector<CognateCandidate>& candidates,
                                          const std::set<std::string>& stoplist);

// All three filters composed under the fixed precedence; verdicts come back
// in candidate order.
std::vector<FilterVerdict> evaluate_filters(const std::vector<CognateCandidate>& candidates,
                                            const std::set<std::string>& proper_noun_lexicon,
                                            const std::set<std::string>& stoplist,
                                            const FilterThresholds& thresholds,
                                            const std::vector<EmbeddingRecord>& records);

void write_verdicts(const std::string& path, const std::vector<FilterVerdict>& verdicts);

} // namespace bantulex
