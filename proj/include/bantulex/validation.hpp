#pragma once
// Matching candidate lemmas against reference resources: proto-form
// reconstructions and basic-vocabulary wordlists.
//
// Matching is a tier cascade; the first tier that produces a match wins:
//   exact             equality of normalized forms
//   substring         substring either direction, on normalized forms
//   variant-substring equality or substring over surface-variant sets
//   edit-1            Levenshtein distance <= 1 over variant sets
// Forms whose shorter normalized side has length < min_len only participate
// in the exact tier ("a" would otherwise be a substring of everything).

#include "bantulex/types.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bantulex {

// Case-folds, decomposes precomposed Latin letters, strips combining marks
// (tone diacritics), and removes asterisks, hyphens, apostrophes, whitespace
// and any remaining non-letter character. Idempotent. Throws when the result
// is empty (the form cannot participate in matching).
std::string normalize_form(const std::string& s);

// Byte-level edit distance with unit costs; inputs are normalized forms.
std::size_t levenshtein(const std::string& a, const std::string& b);

// Surface-correspondence rules, individually switchable so every match can
// be attributed to a rule.
struct VariantRules {
    bool vowel_run_collapse = true;   // (a) laal -> lal
    bool geminate_collapse = true;    // (b) nne -> ne
    bool prenasal_simplify = true;    // (c) mbili -> bili, camba -> caba
    bool monophthongize = true;       // (d) nanai -> nane, au -> o
    bool initial_elision = true;      // (e) bon -> on; reference side only
};

// Closure (depth <= 2) of the rules over a normalized form; always contains
// the input itself. Rule (e) drops a weak initial consonant (b, g, j, y, w,
// the lenition-prone onsets) and is applied to reference roots only.
std::set<std::string> variants(const std::string& normalized, bool reference_side,
                               const VariantRules& rules = {});

enum class MatchTier { Exact, Substring, VariantSubstring, Edit1, None };
std::string tier_to_string(MatchTier t);

struct MatchResult {
    MatchTier tier = MatchTier::None;
    std::optional<std::size_t> entry_index; // into the searched entry vector
    std::string matched_form;               // verbatim proto_form / wordlist form
    std::string matched_concept;            // wordlist matches only
    bool via_gloss = false;                 // wordlist match fired on the gloss path
    std::string normalized_lemma;
    std::string normalized_root;
    std::string lemma_variant; // witnessing variant pair (equal to the
    std::string root_variant;  // normalized forms when no rule was needed)

    bool matched() const { return tier != MatchTier::None; }
};

struct MatcherOptions {
    std::size_t min_len = 3;
    VariantRules rules;
};

// Tiered search over the reconstruction entries. Among equal-tier matches
// the longest normalized root wins, then the lexicographically smallest.
MatchResult match_blr3(const std::string& lemma,
                       const std::vector<ReconstructionEntry>& entries,
                       const MatcherOptions& opt = {});

// Wordlist match: fires when the candidate gloss case-folds to a concept
// attested in the entries (semantic path), or when the normalized lemma
// matches an entry form under the same tier rules as match_blr3.
MatchResult match_asjp(const std::string& lemma, const std::optional<std::string>& gloss,
                       const std::vector<AsjpEntry>& entries,
                       const MatcherOptions& opt = {});

enum class ValidationStatus { Both, Blr3, Asjp, Unvalidated };
std::string status_to_string(ValidationStatus s);

ValidationStatus validation_status(const MatchResult& blr3, const MatchResult& asjp);

struct ValidationRow {
    std::string root;
    std::size_t language_count = 0;
    MatchResult blr3;
    MatchResult asjp;
    ValidationStatus status = ValidationStatus::Unvalidated;
};

// Report TSV: root, language_count, blr3_form_or_-, blr3_tier,
// asjp_concept_or_-, status.
void write_validation_report(const std::string& path, const std::vector<ValidationRow>& rows);

} // namespace bantulex
