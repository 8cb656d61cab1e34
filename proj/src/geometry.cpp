#include "bantulex/geometry.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace bantulex {

double norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double cosine(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.size()) +
                                    " vs " + std::to_string(v.size()) + ")");
    }
    if (u.empty()) throw std::invalid_argument("cosine: empty vectors");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) {
        throw std::invalid_argument("cosine: zero vector is degenerate input");
    }
    const double c = dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::clamp(c, -1.0, 1.0);
}

const Vec* CenteredSpace::mean_of(const std::string& language) const {
    auto it = std::lower_bound(per_language_mean.begin(), per_language_mean.end(), language,
                               [](const auto& p, const std::string& l) { return p.first < l; });
    if (it == per_language_mean.end() || it->first != language) return nullptr;
    return &it->second;
}

CenteredSpace center_by_language(const std::vector<EmbeddingRecord>& records) {
    if (records.empty()) throw std::invalid_argument("center_by_language: no records");
    const std::size_t dim = records.front().vector.size();

    std::map<std::string, std::pair<Vec, std::size_t>> sums;
    for (const auto& r : records) {
        if (r.vector.size() != dim) {
            throw std::invalid_argument("center_by_language: inconsistent dimensions");
        }
        auto& [sum, count] = sums[r.language];
        if (sum.empty()) sum.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) sum[i] += r.vector[i];
        ++count;
    }

    CenteredSpace out;
    out.dimension = dim;
    out.per_language_mean.reserve(sums.size());
    for (auto& [lang, sc] : sums) {
        Vec mean(dim);
        for (std::size_t i = 0; i < dim; ++i) mean[i] = sc.first[i] / static_cast<double>(sc.second);
        out.per_language_mean.emplace_back(lang, std::move(mean));
    }

    out.records = records;
    for (auto& r : out.records) {
        const Vec* mean = out.mean_of(r.language);
        for (std::size_t i = 0; i < dim; ++i) r.vector[i] -= (*mean)[i];
    }
    return out;
}

SimilarityMatrix language_similarity_matrix(const std::vector<EmbeddingRecord>& records,
                                            MatrixMode mode) {
    // language -> folded lemma -> record indices (file order preserved)
    std::map<std::string, std::map<std::string, std::vector<std::size_t>>> by_lang;
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_lang[records[i].language][fold_case(records[i].lemma)].push_back(i);
    }
    if (by_lang.size() < 2) {
        throw std::invalid_argument("language_similarity_matrix: need at least 2 languages");
    }

    SimilarityMatrix m;
    for (const auto& [lang, _] : by_lang) m.labels.push_back(lang);
    const std::size_t n = m.labels.size();
    m.values.assign(n, std::vector<double>(n, 1.0));

    for (std::size_t a = 0; a < n; ++a) {
        const auto& la = by_lang.at(m.labels[a]);
        for (std::size_t b = a + 1; b < n; ++b) {
            const auto& lb = by_lang.at(m.labels[b]);
            double sum = 0.0;
            std::size_t count = 0;
            if (mode == MatrixMode::SharedLemma) {
                // Mean over shared lemma keys; a key with several records
                // (e.g. noun and verb readings) contributes its mean pair
                // cosine so no key dominates.
                for (const auto& [lemma, ia] : la) {
                    auto it = lb.find(lemma);
                    if (it == lb.end()) continue;
                    double s = 0.0;
                    std::size_t c = 0;
                    for (std::size_t i : ia) {
                        for (std::size_t j : it->second) {
                            s += cosine(records[i].vector, records[j].vector);
                            ++c;
                        }
                    }
                    sum += s / static_cast<double>(c);
                    ++count;
                }
                if (count == 0) {
                    throw std::runtime_error("languages '" + m.labels[a] + "' and '" + m.labels[b] +
                                             "' share no lemma; cannot build shared-lemma matrix");
                }
            } else {
                for (const auto& [lemma_a, ia] : la) {
                    for (const auto& [lemma_b, ib] : lb) {
                        for (std::size_t i : ia) {
                            for (std::size_t j : ib) {
                                sum += cosine(records[i].vector, records[j].vector);
                                ++count;
                            }
                        }
                    }
                }
                if (count == 0) {
                    throw std::runtime_error("no cross-lingual record pairs for languages '" +
                                             m.labels[a] + "' and '" + m.labels[b] + "'");
                }
            }
            const double v = sum / static_cast<double>(count);
            m.values[a][b] = v;
            m.values[b][a] = v; // computed once, mirrored exactly
        }
    }
    return m;
}

void write_similarity_matrix(const std::string& path, const SimilarityMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "label";
    for (const auto& l : m.labels) out << '\t' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out << '\t' << format_double(m.values[i][j]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SimilarityMatrix read_similarity_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    SimilarityMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty matrix file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split(line, '\t');
    if (header.size() < 2 || header[0] != "label") {
        throw std::runtime_error(path + ": malformed matrix header");
    }
    m.labels.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() != m.labels.size() + 1) {
            throw std::runtime_error(path + ": row width mismatch");
        }
        std::vector<double> row;
        row.reserve(m.labels.size());
        for (std::size_t i = 1; i < fields.size(); ++i) row.push_back(parse_double(fields[i]));
        m.values.push_back(std::move(row));
    }
    if (m.values.size() != m.labels.size()) {
        throw std::runtime_error(path + ": row count does not match label count");
    }
    return m;
}

} // namespace bantulex
