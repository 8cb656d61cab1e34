#include "bantulex/discovery.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bantulex {

std::string provenance_to_string(Provenance p) {
    switch (p) {
        case Provenance::SurfaceShared: return "surface-shared";
        case Provenance::NeighborCluster: return "neighbor-cluster";
        case Provenance::Both: return "both";
    }
    throw std::logic_error("unreachable provenance");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "surface-shared") return Provenance::SurfaceShared;
    if (s == "neighbor-cluster") return Provenance::NeighborCluster;
    if (s == "both") return Provenance::Both;
    throw std::runtime_error("unknown provenance '" + s + "'");
}

std::string agreement_to_string(Agreement a) {
    switch (a) {
        case Agreement::NotEvaluated: return "-";
        case Agreement::Strong: return "strong";
        case Agreement::Weak: return "weak";
        case Agreement::NotEvaluable: return "not-evaluable";
    }
    throw std::logic_error("unreachable agreement");
}

Agreement agreement_from_string(const std::string& s) {
    if (s == "-") return Agreement::NotEvaluated;
    if (s == "strong") return Agreement::Strong;
    if (s == "weak") return Agreement::Weak;
    if (s == "not-evaluable") return Agreement::NotEvaluable;
    throw std::runtime_error("unknown agreement '" + s + "'");
}

namespace {

// Builds a candidate from record indices. Root, POS and gloss are majority
// votes with lexicographic tie-breaking so the result is order-independent.
CognateCandidate finalize_candidate(std::vector<std::size_t> indices,
                                    const std::vector<EmbeddingRecord>& records,
                                    Provenance prov) {
    CognateCandidate c;
    c.provenance = prov;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    c.record_indices = indices;

    std::set<Member> members;
    std::set<std::string> languages;
    std::map<std::string, std::size_t> surface_count;
    std::map<Pos, std::size_t> pos_count;
    std::map<std::string, std::size_t> gloss_count;
    for (std::size_t i : indices) {
        const auto& r = records[i];
        members.insert({r.language, r.lemma});
        languages.insert(r.language);
        ++pos_count[r.pos];
        if (r.gloss) ++gloss_count[*r.gloss];
    }
    for (const auto& m : members) ++surface_count[m.lemma];

    c.members.assign(members.begin(), members.end());
    c.language_count = languages.size();

    std::size_t best = 0;
    for (const auto& [surface, n] : surface_count) {
        if (n > best) {
            best = n;
            c.root = surface;
        }
    }
    std::size_t best_pos = 0;
    for (Pos p : {Pos::Noun, Pos::Verb, Pos::Other}) {
        auto it = pos_count.find(p);
        if (it != pos_count.end() && it->second > best_pos) {
            best_pos = it->second;
            c.pos = p;
        }
    }
    std::size_t best_gloss = 0;
    for (const auto& [g, n] : gloss_count) {
        if (n > best_gloss) {
            best_gloss = n;
            c.gloss = g;
        }
    }
    return c;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::vector<CognateCandidate> surface_shared_candidates(
    const std::vector<EmbeddingRecord>& records, std::size_t min_languages) {
    std::map<std::string, std::vector<std::size_t>> by_lemma;
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_lemma[fold_case(records[i].lemma)].push_back(i);
    }
    std::vector<CognateCandidate> out;
    for (const auto& [lemma, indices] : by_lemma) {
        std::set<std::string> langs;
        for (std::size_t i : indices) langs.insert(records[i].language);
        if (langs.size() < min_languages) continue;
        out.push_back(finalize_candidate(indices, records, Provenance::SurfaceShared));
    }
    return out;
}

std::size_t count_zero_vectors(const CenteredSpace& space) {
    std::size_t n = 0;
    for (const auto& r : space.records) {
        if (norm(r.vector) == 0.0) ++n;
    }
    return n;
}

std::vector<CognateCandidate> neighbor_cluster_candidates(const CenteredSpace& space,
                                                          double sim_threshold,
                                                          std::size_t min_languages) {
    if (!(sim_threshold > 0.0 && sim_threshold < 1.0)) {
        throw std::invalid_argument("neighbor clustering: sim_threshold must lie in (0, 1)");
    }
    const auto& records = space.records;
    const std::size_t n = records.size();

    std::vector<char> usable(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(records[i].vector) == 0.0) usable[i] = 0;
    }

    // One pass over i<j: track the nearest cross-lingual neighbor of every
    // record and collect threshold edges. Ties go to the smaller index.
    std::vector<std::size_t> nn(n, n);
    std::vector<double> nn_sim(n, -2.0);
    std::vector<std::pair<std::size_t, std::size_t>> threshold_edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (!usable[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!usable[j] || records[i].language == records[j].language) continue;
            const double s = cosine(records[i].vector, records[j].vector);
            if (s > nn_sim[i]) {
                nn_sim[i] = s;
                nn[i] = j;
            }
            if (s > nn_sim[j]) {
                nn_sim[j] = s;
                nn[j] = i;
            }
            if (s >= sim_threshold) threshold_edges.emplace_back(i, j);
        }
    }

    UnionFind uf(n);
    for (auto [i, j] : threshold_edges) uf.unite(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = nn[i];
        if (j < n && j > i && nn[j] == i) uf.unite(i, j); // mutual nearest neighbors
    }

    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < n; ++i) {
        if (!usable[i]) continue;
        components[uf.find(i)].push_back(i);
    }

    std::vector<CognateCandidate> out;
    for (const auto& [root, indices] : components) {
        if (indices.size() < 2) continue;
        std::set<std::string> langs;
        for (std::size_t i : indices) langs.insert(records[i].language);
        if (langs.size() < min_languages) continue;
        out.push_back(finalize_candidate(indices, records, Provenance::NeighborCluster));
    }
    // Components come out keyed by smallest record index; order by root for a
    // stable, content-derived order.
    std::sort(out.begin(), out.end(), [](const CognateCandidate& a, const CognateCandidate& b) {
        return a.root != b.root ? a.root < b.root : a.members < b.members;
    });
    return out;
}

std::vector<CognateCandidate> merge_candidates(const std::vector<CognateCandidate>& surface,
                                               const std::vector<CognateCandidate>& neighbor,
                                               const std::vector<EmbeddingRecord>& records) {
    const std::size_t total = surface.size() + neighbor.size();
    UnionFind uf(total);

    // Two candidates overlap when they share a (language, folded lemma) pair.
    std::map<std::pair<std::string, std::string>, std::size_t> first_seen;
    auto link = [&](std::size_t idx, const CognateCandidate& c) {
        for (const auto& m : c.members) {
            auto key = std::make_pair(m.language, fold_case(m.lemma));
            auto [it, inserted] = first_seen.emplace(key, idx);
            if (!inserted) uf.unite(it->second, idx);
        }
    };
    for (std::size_t i = 0; i < surface.size(); ++i) link(i, surface[i]);
    for (std::size_t i = 0; i < neighbor.size(); ++i) link(surface.size() + i, neighbor[i]);

    std::map<std::size_t, std::pair<std::vector<std::size_t>, std::pair<bool, bool>>> groups;
    for (std::size_t i = 0; i < total; ++i) {
        const auto& c = i < surface.size() ? surface[i] : neighbor[i - surface.size()];
        auto& g = groups[uf.find(i)];
        g.first.insert(g.first.end(), c.record_indices.begin(), c.record_indices.end());
        if (i < surface.size()) {
            g.second.first = true;
        } else {
            g.second.second = true;
        }
    }

    std::vector<CognateCandidate> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) {
        Provenance prov = g.second.first && g.second.second ? Provenance::Both
                          : g.second.first                  ? Provenance::SurfaceShared
                                                            : Provenance::NeighborCluster;
        out.push_back(finalize_candidate(std::move(g.first), records, prov));
    }
    std::sort(out.begin(), out.end(), [](const CognateCandidate& a, const CognateCandidate& b) {
        return a.root != b.root ? a.root < b.root : a.members < b.members;
    });
    return out;
}

namespace {

std::optional<CoherenceStats> pairwise_coherence(const std::vector<std::size_t>& indices,
                                                 const std::vector<EmbeddingRecord>& records) {
    std::vector<double> sims;
    for (std::size_t a = 0; a < indices.size(); ++a) {
        const auto& ra = records[indices[a]];
        if (norm(ra.vector) == 0.0) continue;
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            const auto& rb = records[indices[b]];
            if (ra.language == rb.language) continue;
            if (norm(rb.vector) == 0.0) continue;
            sims.push_back(cosine(ra.vector, rb.vector));
        }
    }
    if (sims.empty()) return std::nullopt;
    CoherenceStats st;
    double sum = 0.0;
    st.min_sim = sims.front();
    for (double s : sims) {
        sum += s;
        st.min_sim = std::min(st.min_sim, s);
    }
    st.mean_sim = sum / static_cast<double>(sims.size());
    double var = 0.0;
    for (double s : sims) var += (s - st.mean_sim) * (s - st.mean_sim);
    st.stdev_sim = std::sqrt(var / static_cast<double>(sims.size()));
    return st;
}

} // namespace

void compute_coherence(std::vector<CognateCandidate>& candidates, const CenteredSpace& space) {
    for (auto& c : candidates) {
        const auto& indices =
            c.record_indices.empty() ? resolve_member_records(c, space.records) : c.record_indices;
        c.coherence = pairwise_coherence(indices, space.records);
    }
}

void score_and_rank(std::vector<CognateCandidate>& candidates) {
    auto mean_or_low = [](const CognateCandidate& c) {
        return c.coherence ? c.coherence->mean_sim : -2.0;
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const CognateCandidate& a, const CognateCandidate& b) {
                  if (a.language_count != b.language_count) {
                      return a.language_count > b.language_count;
                  }
                  const double ma = mean_or_low(a), mb = mean_or_low(b);
                  if (ma != mb) return ma > mb;
                  if (a.root != b.root) return a.root < b.root;
                  return a.members < b.members;
              });
}

std::vector<std::size_t> resolve_member_records(const CognateCandidate& candidate,
                                                const std::vector<EmbeddingRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> index;
    for (std::size_t i = 0; i < records.size(); ++i) {
        index[{records[i].language, fold_case(records[i].lemma)}].push_back(i);
    }
    std::vector<std::size_t> out;
    for (const auto& m : candidate.members) {
        auto it = index.find({m.language, fold_case(m.lemma)});
        if (it == index.end()) continue;
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t cross_source_agreement(std::vector<CognateCandidate>& candidates,
                                   const std::vector<EmbeddingRecord>& second_source,
                                   double strong_threshold) {
    if (second_source.empty()) {
        throw std::invalid_argument("cross-source agreement: second embedding source is empty");
    }
    const CenteredSpace second = center_by_language(second_source);

    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> index;
    for (std::size_t i = 0; i < second.records.size(); ++i) {
        index[{second.records[i].language, fold_case(second.records[i].lemma)}].push_back(i);
    }

    std::size_t strong = 0;
    for (auto& c : candidates) {
        std::vector<std::size_t> covered;
        std::size_t covered_members = 0;
        for (const auto& m : c.members) {
            auto it = index.find({m.language, fold_case(m.lemma)});
            if (it == index.end()) continue;
            ++covered_members;
            covered.insert(covered.end(), it->second.begin(), it->second.end());
        }
        if (covered_members < 2) {
            c.agreement = Agreement::NotEvaluable;
            continue;
        }
        const auto stats = pairwise_coherence(covered, second.records);
        if (!stats) {
            c.agreement = Agreement::NotEvaluable;
            continue;
        }
        c.agreement = stats->mean_sim >= strong_threshold ? Agreement::Strong : Agreement::Weak;
        if (c.agreement == Agreement::Strong) ++strong;
    }
    return strong;
}

void write_candidates(const std::string& path, const std::vector<CognateCandidate>& candidates) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "root\tpos\tlanguage_count\tlanguages\tmean_sim\tmin_sim\tstdev_sim\tprovenance"
           "\tagreement\tgloss\tmembers\n";
    for (const auto& c : candidates) {
        std::set<std::string> langs;
        for (const auto& m : c.members) langs.insert(m.language);
        std::vector<std::string> lang_list(langs.begin(), langs.end());
        std::vector<std::string> member_list;
        member_list.reserve(c.members.size());
        for (const auto& m : c.members) member_list.push_back(m.language + ":" + m.lemma);

        out << c.root << '\t' << pos_to_string(c.pos) << '\t' << c.language_count << '\t'
            << join(lang_list, ",") << '\t';
        if (c.coherence) {
            out << format_double(c.coherence->mean_sim) << '\t'
                << format_double(c.coherence->min_sim) << '\t'
                << format_double(c.coherence->stdev_sim);
        } else {
            out << "-\t-\t-";
        }
        out << '\t' << provenance_to_string(c.provenance) << '\t'
            << agreement_to_string(c.agreement) << '\t' << (c.gloss ? *c.gloss : std::string("-"))
            << '\t' << join(member_list, ",") << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<CognateCandidate> read_candidates(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<CognateCandidate> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true; // header row
            continue;
        }
        const auto f = split(line, '\t');
        if (f.size() != 11) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 11 fields, got " + std::to_string(f.size()));
        }
        CognateCandidate c;
        c.root = f[0];
        try {
            c.pos = pos_from_string(f[1]);
            c.language_count = static_cast<std::size_t>(std::stoul(f[2]));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (f[4] != "-") {
            CoherenceStats st;
            st.mean_sim = parse_double(f[4]);
            st.min_sim = parse_double(f[5]);
            st.stdev_sim = parse_double(f[6]);
            c.coherence = st;
        }
        c.provenance = provenance_from_string(f[7]);
        c.agreement = agreement_from_string(f[8]);
        if (f[9] != "-") c.gloss = f[9];
        if (!f[10].empty()) {
            for (const auto& part : split(f[10], ',')) {
                const auto colon = part.find(':');
                if (colon == std::string::npos) {
                    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                             ": malformed member '" + part + "'");
                }
                c.members.push_back({part.substr(0, colon), part.substr(colon + 1)});
            }
            std::sort(c.members.begin(), c.members.end());
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace bantulex
