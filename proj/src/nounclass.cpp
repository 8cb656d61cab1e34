#include "bantulex/nounclass.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

namespace bantulex {

ClassCentroidSet class_centroids(const CenteredSpace& space, std::size_t min_members) {
    ClassCentroidSet out;
    out.min_members = min_members;

    std::map<LanguageClass, Vec> sums;
    for (const auto& r : space.records) {
        if (r.pos != Pos::Noun || !r.noun_class) continue;
        const LanguageClass key{r.language, *r.noun_class};
        auto& sum = sums[key];
        if (sum.empty()) sum.assign(space.dimension, 0.0);
        for (std::size_t i = 0; i < space.dimension; ++i) sum[i] += r.vector[i];
        ++out.counts[key];
    }
    if (out.counts.empty()) {
        throw std::runtime_error("noun-class analysis: no noun records with a class label");
    }
    for (auto& [key, sum] : sums) {
        const std::size_t n = out.counts.at(key);
        if (n < min_members) continue;
        Vec centroid(space.dimension);
        for (std::size_t i = 0; i < space.dimension; ++i) {
            centroid[i] = sum[i] / static_cast<double>(n);
        }
        out.centroids.emplace(key, std::move(centroid));
    }
    return out;
}

namespace {

ClassPairs pairs_from(const std::vector<std::pair<LanguageClass, const Vec*>>& items) {
    ClassPairs out;
    std::map<int, double> class_sum;
    std::map<int, std::size_t> class_count;
    std::map<int, std::set<std::string>> class_langs;

    for (const auto& [key, vec] : items) class_langs[key.second].insert(key.first);

    double sw = 0.0, sb = 0.0;
    std::size_t nw = 0, nb = 0;
    for (std::size_t a = 0; a < items.size(); ++a) {
        for (std::size_t b = a + 1; b < items.size(); ++b) {
            if (items[a].first.first == items[b].first.first) continue; // same language
            if (norm(*items[a].second) == 0.0 || norm(*items[b].second) == 0.0) continue;
            const double s = cosine(*items[a].second, *items[b].second);
            const bool within = items[a].first.second == items[b].first.second;
            out.values.push_back(s);
            out.is_within.push_back(within ? 1 : 0);
            if (within) {
                const int cls = items[a].first.second;
                sw += s;
                ++nw;
                class_sum[cls] += s;
                ++class_count[cls];
                auto it = out.per_class_min_within.find(cls);
                if (it == out.per_class_min_within.end()) {
                    out.per_class_min_within[cls] = s;
                } else {
                    it->second = std::min(it->second, s);
                }
            } else {
                sb += s;
                ++nb;
            }
        }
    }
    if (nw == 0) {
        throw std::runtime_error("noun-class analysis: no cross-lingual same-class pair");
    }
    if (nb == 0) {
        throw std::runtime_error(
            "noun-class analysis: a single shared class leaves the between-class mean undefined");
    }
    out.within_mean = sw / static_cast<double>(nw);
    out.between_mean = sb / static_cast<double>(nb);
    for (const auto& [cls, sum] : class_sum) {
        out.per_class_mean_within[cls] = sum / static_cast<double>(class_count[cls]);
    }
    for (const auto& [cls, langs] : class_langs) {
        out.per_class_languages[cls] = langs.size();
    }
    return out;
}

} // namespace

ClassPairs within_between_similarity(const ClassCentroidSet& centroids) {
    std::vector<std::pair<LanguageClass, const Vec*>> items;
    items.reserve(centroids.centroids.size());
    for (const auto& [key, vec] : centroids.centroids) items.emplace_back(key, &vec);
    if (items.size() < 2) {
        throw std::runtime_error("noun-class analysis: fewer than 2 class centroids");
    }
    return pairs_from(items);
}

ClassPairs within_between_pairwise(const CenteredSpace& space, std::size_t min_members) {
    std::map<LanguageClass, std::size_t> counts;
    for (const auto& r : space.records) {
        if (r.pos == Pos::Noun && r.noun_class) ++counts[{r.language, *r.noun_class}];
    }
    std::vector<std::pair<LanguageClass, const Vec*>> items;
    for (const auto& r : space.records) {
        if (r.pos != Pos::Noun || !r.noun_class) continue;
        const LanguageClass key{r.language, *r.noun_class};
        if (counts.at(key) < min_members) continue;
        items.emplace_back(key, &r.vector);
    }
    if (items.empty()) {
        throw std::runtime_error("noun-class analysis: no noun records with a class label");
    }
    return pairs_from(items);
}

ClassTestResult class_similarity_test(const ClassPairs& pairs, int n_perm, std::uint64_t seed) {
    const PermutationResult perm = mean_difference_test(pairs.values, pairs.is_within, n_perm, seed);
    ClassTestResult out;
    out.within_mean = pairs.within_mean;
    out.between_mean = pairs.between_mean;
    out.per_class_min_within = pairs.per_class_min_within;
    out.p_value = perm.p_value;
    out.n_permutations = perm.n_permutations;
    out.seed = perm.seed;
    return out;
}

std::map<LanguageClass, std::string> extract_class_prefixes(
    const std::vector<EmbeddingRecord>& records, std::size_t min_members) {
    std::map<LanguageClass, std::vector<std::string>> cells;
    for (const auto& r : records) {
        if (r.pos != Pos::Noun || !r.noun_class) continue;
        cells[{r.language, *r.noun_class}].push_back(r.lemma);
    }
    std::map<LanguageClass, std::string> out;
    for (const auto& [key, lemmas] : cells) {
        if (lemmas.size() < min_members) continue;
        // Longest common prefix on code points so multi-byte letters are not
        // split, trimmed to 4 characters.
        auto common = utf8_decode(lemmas.front());
        for (const auto& lemma : lemmas) {
            const auto cps = utf8_decode(lemma);
            std::size_t k = 0;
            while (k < common.size() && k < cps.size() && common[k] == cps[k]) ++k;
            common.resize(k);
        }
        if (common.size() > 4) common.resize(4);
        out[key] = common.empty() ? "-" : utf8_encode(common);
    }
    return out;
}

void write_class_report(const std::string& path, const ClassPairs& pairs,
                        const ClassTestResult& test) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "class\tn_languages\twithin_min\twithin_mean\n";
    for (const auto& [cls, min_within] : pairs.per_class_min_within) {
        out << cls << '\t' << pairs.per_class_languages.at(cls) << '\t'
            << format_double(min_within) << '\t' << format_double(pairs.per_class_mean_within.at(cls))
            << '\n';
    }
    out << "# within_mean=" << format_double(test.within_mean)
        << " between_mean=" << format_double(test.between_mean)
        << " p=" << format_double(test.p_value) << " n_perm=" << test.n_permutations
        << " seed=" << test.seed << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_prefix_table(const std::string& path,
                        const std::map<LanguageClass, std::string>& prefixes) {
    std::set<std::string> langs;
    std::set<int> classes;
    for (const auto& [key, _] : prefixes) {
        langs.insert(key.first);
        classes.insert(key.second);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "class";
    for (const auto& l : langs) out << '\t' << l;
    out << '\n';
    for (int cls : classes) {
        out << cls;
        for (const auto& l : langs) {
            auto it = prefixes.find({l, cls});
            out << '\t' << (it == prefixes.end() ? "-" : it->second);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
