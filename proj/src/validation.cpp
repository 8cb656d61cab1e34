#include "bantulex/validation.hpp"

#include "bantulex/text.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace bantulex {

namespace {

// Maps a folded Latin code point to its base ASCII letters; returns nullptr
// for code points that are dropped (combining marks, punctuation, digits).
const char* base_letters(std::uint32_t cp) {
    if (cp >= 'a' && cp <= 'z') {
        static const char* kAscii[26] = {"a", "b", "c", "d", "e", "f", "g", "h", "i",
                                         "j", "k", "l", "m", "n", "o", "p", "q", "r",
                                         "s", "t", "u", "v", "w", "x", "y", "z"};
        return kAscii[cp - 'a'];
    }
    switch (cp) {
        case 0x00E0: case 0x00E1: case 0x00E2: case 0x00E3: case 0x00E4: case 0x00E5:
            return "a";
        case 0x00E6: return "ae";
        case 0x00E7: return "c";
        case 0x00E8: case 0x00E9: case 0x00EA: case 0x00EB: return "e";
        case 0x00EC: case 0x00ED: case 0x00EE: case 0x00EF: return "i";
        case 0x00F0: return "d";
        case 0x00F1: return "n";
        case 0x00F2: case 0x00F3: case 0x00F4: case 0x00F5: case 0x00F6: case 0x00F8:
            return "o";
        case 0x00F9: case 0x00FA: case 0x00FB: case 0x00FC: return "u";
        case 0x00FD: case 0x00FF: return "y";
        case 0x00FE: return "th";
        case 0x00DF: return "ss";
        default: break;
    }
    // Latin Extended-A, lower-case halves (fold_case already lowered).
    if (cp >= 0x0101 && cp <= 0x0105) return "a";
    if (cp >= 0x0107 && cp <= 0x010D) return "c";
    if (cp >= 0x010F && cp <= 0x0111) return "d";
    if (cp >= 0x0113 && cp <= 0x011B) return "e";
    if (cp >= 0x011D && cp <= 0x0123) return "g";
    if (cp == 0x0125 || cp == 0x0127) return "h";
    if (cp >= 0x0129 && cp <= 0x0131) return "i";
    if (cp == 0x0135) return "j";
    if (cp == 0x0137 || cp == 0x0138) return "k";
    if (cp >= 0x013A && cp <= 0x0142) return "l";
    if (cp >= 0x0144 && cp <= 0x0149) return "n";
    if (cp == 0x014B) return "ng"; // ENG spells the velar nasal
    if (cp >= 0x014D && cp <= 0x0151) return "o";
    if (cp == 0x0153) return "oe";
    if (cp >= 0x0155 && cp <= 0x0159) return "r";
    if (cp >= 0x015B && cp <= 0x0161) return "s";
    if (cp >= 0x0163 && cp <= 0x0167) return "t";
    if (cp >= 0x0169 && cp <= 0x0173) return "u";
    if (cp == 0x0175) return "w";
    if (cp == 0x0177) return "y";
    if (cp >= 0x017A && cp <= 0x017E) return "z";
    if (cp == 0x017F) return "s";
    // A few Latin Extended-B letters with carons / ogoneks.
    if (cp == 0x01CE) return "a";
    if (cp == 0x01D0) return "i";
    if (cp == 0x01D2) return "o";
    if (cp >= 0x01D4 && cp <= 0x01DC) return "u";
    if (cp == 0x01E7) return "g";
    if (cp == 0x01E9) return "k";
    if (cp == 0x01EB) return "o";
    if (cp == 0x01F0) return "j";
    if (cp == 0x0219) return "s";
    if (cp == 0x021B) return "t";
    return nullptr;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

} // namespace

std::string normalize_form(const std::string& s) {
    const auto cps = utf8_decode(fold_case(s));
    std::string out;
    out.reserve(s.size());
    for (std::uint32_t cp : cps) {
        if (cp >= 0x0300 && cp <= 0x036F) continue; // combining marks (tones)
        if (const char* base = base_letters(cp)) out += base;
    }
    if (out.empty()) {
        throw std::invalid_argument("form '" + s + "' normalizes to the empty string");
    }
    return out;
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
    const std::size_t m = a.size(), n = b.size();
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

namespace {

// All single-application results of the variant rules on `s`.
std::vector<std::string> expand_once(const std::string& s, bool reference_side,
                                     const VariantRules& rules) {
    std::vector<std::string> out;
    const std::size_t n = s.size();

    if (rules.vowel_run_collapse || rules.geminate_collapse) {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && s[j] == s[i]) ++j;
            if (j - i >= 2) {
                const bool vowel = is_vowel(s[i]);
                if ((vowel && rules.vowel_run_collapse) || (!vowel && rules.geminate_collapse)) {
                    out.push_back(s.substr(0, i + 1) + s.substr(j));
                }
            }
            i = j;
        }
    }
    if (rules.prenasal_simplify) {
        static const char* kClusters[] = {"mb", "nd", "ng", "nt", "mp", "nk"};
        for (const char* cl : kClusters) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (s[i] == cl[0] && s[i + 1] == cl[1]) {
                    out.push_back(s.substr(0, i) + s.substr(i + 1));
                }
            }
        }
    }
    if (rules.monophthongize) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (s[i] == 'a' && s[i + 1] == 'i') {
                out.push_back(s.substr(0, i) + "e" + s.substr(i + 2));
            } else if (s[i] == 'a' && s[i + 1] == 'u') {
                out.push_back(s.substr(0, i) + "o" + s.substr(i + 2));
            }
        }
    }
    if (rules.initial_elision && reference_side && n >= 2) {
        const char c = s[0];
        if (c == 'b' || c == 'g' || c == 'j' || c == 'y' || c == 'w') {
            out.push_back(s.substr(1));
        }
    }
    return out;
}

} // namespace

std::set<std::string> variants(const std::string& normalized, bool reference_side,
                               const VariantRules& rules) {
    std::set<std::string> out{normalized};
    std::vector<std::string> frontier{normalized};
    for (int depth = 0; depth < 2; ++depth) {
        std::vector<std::string> next;
        for (const auto& s : frontier) {
            for (auto& v : expand_once(s, reference_side, rules)) {
                if (!v.empty() && out.insert(v).second) next.push_back(std::move(v));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::string tier_to_string(MatchTier t) {
    switch (t) {
        case MatchTier::Exact: return "exact";
        case MatchTier::Substring: return "substring";
        case MatchTier::VariantSubstring: return "variant-substring";
        case MatchTier::Edit1: return "edit-1";
        case MatchTier::None: return "none";
    }
    throw std::logic_error("unreachable tier");
}

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

struct RootEntry {
    std::size_t index;
    std::string verbatim;   // as published
    std::string normalized; // normalize_form(verbatim)
    std::string concept_name; // wordlist entries only
};

// Generic tiered matcher over pre-normalized reference roots.
MatchResult tiered_match(const std::string& lemma, const std::vector<RootEntry>& roots,
                         const MatcherOptions& opt) {
    MatchResult res;
    try {
        res.normalized_lemma = normalize_form(lemma);
    } catch (const std::invalid_argument&) {
        return res; // unmatchable form: absence is the result
    }
    const std::string& nl = res.normalized_lemma;

    // Prefer the longest normalized root, then the lexicographically
    // smallest root, then the smallest verbatim form / index.
    auto better = [](const RootEntry& a, const RootEntry& b) {
        if (a.normalized.size() != b.normalized.size()) {
            return a.normalized.size() > b.normalized.size();
        }
        if (a.normalized != b.normalized) return a.normalized < b.normalized;
        if (a.verbatim != b.verbatim) return a.verbatim < b.verbatim;
        return a.index < b.index;
    };

    struct Hit {
        const RootEntry* entry = nullptr;
        std::string lemma_variant;
        std::string root_variant;
    };

    auto finish = [&](MatchTier tier, const Hit& hit) {
        res.tier = tier;
        res.entry_index = hit.entry->index;
        res.matched_form = hit.entry->verbatim;
        res.matched_concept = hit.entry->concept_name;
        res.normalized_root = hit.entry->normalized;
        res.lemma_variant = hit.lemma_variant;
        res.root_variant = hit.root_variant;
        return res;
    };

    // Tier: exact equality of normalized forms.
    {
        Hit best;
        for (const auto& r : roots) {
            if (r.normalized == nl && (!best.entry || better(r, *best.entry))) {
                best = Hit{&r, nl, r.normalized};
            }
        }
        if (best.entry) return finish(MatchTier::Exact, best);
    }

    // Short forms match by exact equality only: "ba" must not substring-match
    // everything. The gate is evaluated on the original normalized forms, so
    // a length-3 root may still contribute a shorter variant below.
    auto eligible = [&](const RootEntry& r) {
        return std::min(nl.size(), r.normalized.size()) >= opt.min_len;
    };

    // Tier: substring either direction on normalized forms.
    {
        Hit best;
        for (const auto& r : roots) {
            if (!eligible(r)) continue;
            if (contains(nl, r.normalized) || contains(r.normalized, nl)) {
                if (!best.entry || better(r, *best.entry)) best = Hit{&r, nl, r.normalized};
            }
        }
        if (best.entry) return finish(MatchTier::Substring, best);
    }

    const auto lemma_vars = variants(nl, /*reference_side=*/false, opt.rules);
    std::vector<std::set<std::string>> root_var_sets(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (eligible(roots[i])) {
            root_var_sets[i] = variants(roots[i].normalized, /*reference_side=*/true, opt.rules);
        }
    }

    // Tier: equality or substring over the variant sets. Variant equality is
    // checked before variant substring so that a form reachable by rule
    // application outranks a mere containment (both report as
    // variant-substring).
    for (int phase = 0; phase < 2; ++phase) {
        Hit best;
        for (std::size_t ri = 0; ri < roots.size(); ++ri) {
            const auto& r = roots[ri];
            if (!eligible(r)) continue;
            const auto& root_vars = root_var_sets[ri];
            Hit witness;
            for (const auto& vl : lemma_vars) {
                for (const auto& vr : root_vars) {
                    const bool ok = (phase == 0)
                                        ? (vl == vr)
                                        : (contains(vl, vr) || contains(vr, vl));
                    if (ok) {
                        witness = Hit{&r, vl, vr};
                        break;
                    }
                }
                if (witness.entry) break;
            }
            if (witness.entry && (!best.entry || better(*witness.entry, *best.entry))) {
                best = witness;
            }
        }
        if (best.entry) return finish(MatchTier::VariantSubstring, best);
    }

    // Tier: edit distance <= 1 over the variant sets.
    {
        Hit best;
        for (std::size_t ri = 0; ri < roots.size(); ++ri) {
            const auto& r = roots[ri];
            if (!eligible(r)) continue;
            const auto& root_vars = root_var_sets[ri];
            Hit witness;
            for (const auto& vl : lemma_vars) {
                for (const auto& vr : root_vars) {
                    if (levenshtein(vl, vr) <= 1) {
                        witness = Hit{&r, vl, vr};
                        break;
                    }
                }
                if (witness.entry) break;
            }
            if (witness.entry && (!best.entry || better(*witness.entry, *best.entry))) {
                best = witness;
            }
        }
        if (best.entry) return finish(MatchTier::Edit1, best);
    }

    return res; // tier None
}

} // namespace

MatchResult match_blr3(const std::string& lemma,
                       const std::vector<ReconstructionEntry>& entries,
                       const MatcherOptions& opt) {
    std::vector<RootEntry> roots;
    roots.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
            roots.push_back({i, entries[i].proto_form, normalize_form(entries[i].proto_form), ""});
        } catch (const std::invalid_argument&) {
            // Unnormalizable reference forms cannot match anything.
        }
    }
    return tiered_match(lemma, roots, opt);
}

MatchResult match_asjp(const std::string& lemma, const std::optional<std::string>& gloss,
                       const std::vector<AsjpEntry>& entries,
                       const MatcherOptions& opt) {
    // Semantic path: the gloss names a concept attested in the wordlist.
    if (gloss) {
        const std::string g = fold_case(trim(*gloss));
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].concept_name == g) {
                MatchResult res;
                try {
                    res.normalized_lemma = normalize_form(lemma);
                } catch (const std::invalid_argument&) {
                    res.normalized_lemma.clear();
                }
                res.tier = MatchTier::Exact;
                res.via_gloss = true;
                res.entry_index = i;
                res.matched_form = entries[i].form;
                res.matched_concept = entries[i].concept_name;
                res.lemma_variant = res.normalized_lemma;
                return res;
            }
        }
    }
    // Form path: tier rules against the wordlist forms.
    std::vector<RootEntry> roots;
    roots.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
            roots.push_back({i, entries[i].form, normalize_form(entries[i].form),
                             entries[i].concept_name});
        } catch (const std::invalid_argument&) {
        }
    }
    return tiered_match(lemma, roots, opt);
}

std::string status_to_string(ValidationStatus s) {
    switch (s) {
        case ValidationStatus::Both: return "Both";
        case ValidationStatus::Blr3: return "BLR3";
        case ValidationStatus::Asjp: return "ASJP";
        case ValidationStatus::Unvalidated: return "Unvalidated";
    }
    throw std::logic_error("unreachable status");
}

ValidationStatus validation_status(const MatchResult& blr3, const MatchResult& asjp) {
    if (blr3.matched() && asjp.matched()) return ValidationStatus::Both;
    if (blr3.matched()) return ValidationStatus::Blr3;
    if (asjp.matched()) return ValidationStatus::Asjp;
    return ValidationStatus::Unvalidated;
}

void write_validation_report(const std::string& path, const std::vector<ValidationRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "root\tlanguage_count\tblr3_form\tblr3_tier\tasjp_concept\tstatus\n";
    for (const auto& r : rows) {
        out << r.root << '\t' << r.language_count << '\t'
            << (r.blr3.matched() ? r.blr3.matched_form : std::string("-")) << '\t'
            << tier_to_string(r.blr3.tier) << '\t'
            << (r.asjp.matched() ? r.asjp.matched_concept : std::string("-")) << '\t'
            << status_to_string(r.status) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
