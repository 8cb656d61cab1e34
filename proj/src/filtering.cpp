#include "bantulex/filtering.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/text.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

namespace bantulex {

std::string verdict_to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::ProperNoun: return "proper-noun";
        case Verdict::LoanwordUniform: return "loanword-uniform";
        case Verdict::Stoplist: return "stoplist";
    }
    throw std::logic_error("unreachable verdict");
}

namespace {

bool has_proper_marker(const std::optional<std::string>& gloss) {
    if (!gloss) return false;
    const std::string g = fold_case(*gloss);
    return g == "propn" || g.rfind("propn:", 0) == 0;
}

FilterVerdict proper_noun_verdict(const CognateCandidate& c,
                                  const std::set<std::string>& lexicon,
                                  const std::vector<EmbeddingRecord>& records) {
    FilterVerdict v{c.root, Verdict::Pass, ""};
    if (lexicon.count(fold_case(c.root))) {
        v.verdict = Verdict::ProperNoun;
        v.evidence = "root '" + c.root + "' is in the proper-noun lexicon";
        return v;
    }
    if (records.empty() || c.members.empty()) return v;

    const auto indices = c.record_indices.empty() ? resolve_member_records(c, records)
                                                  : c.record_indices;
    // A member counts as marked when any of its records carries the marker.
    std::set<std::pair<std::string, std::string>> marked;
    for (std::size_t i : indices) {
        if (has_proper_marker(records[i].gloss)) {
            marked.insert({records[i].language, fold_case(records[i].lemma)});
        }
    }
    std::size_t marked_members = 0;
    for (const auto& m : c.members) {
        if (marked.count({m.language, fold_case(m.lemma)})) ++marked_members;
    }
    if (marked_members * 2 > c.members.size()) {
        v.verdict = Verdict::ProperNoun;
        v.evidence = std::to_string(marked_members) + "/" + std::to_string(c.members.size()) +
                     " members glossed as proper nouns";
    }
    return v;
}

} // namespace

std::vector<FilterVerdict> filter_proper_nouns(const std::vector<CognateCandidate>& candidates,
                                               const std::set<std::string>& proper_noun_lexicon,
                                               const std::vector<EmbeddingRecord>& records) {
    std::vector<FilterVerdict> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        out.push_back(proper_noun_verdict(c, proper_noun_lexicon, records));
    }
    return out;
}

FilterVerdict flag_uniform_coherence(const CognateCandidate& candidate,
                                     const FilterThresholds& thresholds) {
    FilterVerdict v{candidate.root, Verdict::Pass, ""};
    if (!candidate.coherence) {
        v.evidence = "coherence unavailable (fewer than 2 cross-lingual members); passed unevaluated";
        return v;
    }
    const auto& st = *candidate.coherence;
    if (st.mean_sim >= thresholds.mean_floor && st.stdev_sim <= thresholds.stdev_ceiling) {
        v.verdict = Verdict::LoanwordUniform;
        v.evidence = "uniform coherence: mean_sim " + format_double(st.mean_sim) + " >= " +
                     format_double(thresholds.mean_floor) + " and stdev_sim " +
                     format_double(st.stdev_sim) + " <= " + format_double(thresholds.stdev_ceiling);
    }
    return v;
}

std::vector<FilterVerdict> apply_stoplist(const std::vector<CognateCandidate>& candidates,
                                          const std::set<std::string>& stoplist) {
    std::vector<FilterVerdict> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        FilterVerdict v{c.root, Verdict::Pass, ""};
        if (stoplist.count(fold_case(c.root))) {
            v.verdict = Verdict::Stoplist;
            v.evidence = "root '" + c.root + "' is in the stoplist";
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<FilterVerdict> evaluate_filters(const std::vector<CognateCandidate>& candidates,
                                            const std::set<std::string>& proper_noun_lexicon,
                                            const std::set<std::string>& stoplist,
                                            const FilterThresholds& thresholds,
                                            const std::vector<EmbeddingRecord>& records) {
    std::vector<FilterVerdict> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        FilterVerdict pn = proper_noun_verdict(c, proper_noun_lexicon, records);
        if (pn.verdict == Verdict::ProperNoun) {
            out.push_back(std::move(pn));
            continue;
        }
        FilterVerdict sl{c.root, Verdict::Pass, ""};
        if (stoplist.count(fold_case(c.root))) {
            sl.verdict = Verdict::Stoplist;
            sl.evidence = "root '" + c.root + "' is in the stoplist";
            out.push_back(std::move(sl));
            continue;
        }
        out.push_back(flag_uniform_coherence(c, thresholds));
    }
    return out;
}

void write_verdicts(const std::string& path, const std::vector<FilterVerdict>& verdicts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "root\tverdict\tevidence\n";
    for (const auto& v : verdicts) {
        out << v.root << '\t' << verdict_to_string(v.verdict) << '\t'
            << (v.evidence.empty() ? "-" : v.evidence) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
