#include "bantulex/phylo.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace bantulex {

SimilarityMatrix distance_from_similarity(const SimilarityMatrix& similarity) {
    SimilarityMatrix d = similarity;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            d.values[i][j] = (i == j) ? 0.0 : 1.0 - similarity.values[i][j];
        }
    }
    return d;
}

namespace {

void validate_distance_matrix(const SimilarityMatrix& m) {
    const std::size_t n = m.size();
    if (m.values.size() != n) throw std::invalid_argument("distance matrix: ragged input");
    for (std::size_t i = 0; i < n; ++i) {
        if (m.values[i].size() != n) throw std::invalid_argument("distance matrix: ragged input");
        if (m.values[i][i] != 0.0) {
            throw std::invalid_argument("distance matrix: non-zero diagonal at '" + m.labels[i] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (m.values[i][j] < 0.0) {
                throw std::invalid_argument("distance matrix: negative entry (" + m.labels[i] +
                                            ", " + m.labels[j] + ")");
            }
            if (m.values[i][j] != m.values[j][i]) {
                throw std::invalid_argument("distance matrix: asymmetric at (" + m.labels[i] +
                                            ", " + m.labels[j] + ")");
            }
        }
    }
}

} // namespace

LanguageTree ward_linkage(const SimilarityMatrix& distances) {
    validate_distance_matrix(distances);
    const std::size_t n = distances.size();
    if (n < 2) throw std::invalid_argument("ward_linkage: need at least 2 items");

    const std::size_t total = 2 * n - 1; // cluster ids: leaves then merges
    std::vector<std::vector<double>> d(total, std::vector<double>(total, 0.0));
    std::vector<std::size_t> size(total, 0);
    std::vector<char> alive(total, 0);
    for (std::size_t i = 0; i < n; ++i) {
        alive[i] = 1;
        size[i] = 1;
        for (std::size_t j = 0; j < n; ++j) d[i][j] = distances.values[i][j];
    }

    LanguageTree tree;
    tree.leaves = distances.labels;
    tree.merges.reserve(n - 1);

    for (std::size_t step = 0; step < n - 1; ++step) {
        // Scanning ids in ascending (a, b) order with a strict < comparison
        // breaks exact ties toward the smallest pair.
        std::size_t best_a = total, best_b = total;
        double best = 0.0;
        bool found = false;
        for (std::size_t a = 0; a < total; ++a) {
            if (!alive[a]) continue;
            for (std::size_t b = a + 1; b < total; ++b) {
                if (!alive[b]) continue;
                if (!found || d[a][b] < best) {
                    found = true;
                    best = d[a][b];
                    best_a = a;
                    best_b = b;
                }
            }
        }

        const std::size_t id = n + step;
        size[id] = size[best_a] + size[best_b];
        for (std::size_t k = 0; k < total; ++k) {
            if (!alive[k] || k == best_a || k == best_b) continue;
            const double na = static_cast<double>(size[best_a]);
            const double nb = static_cast<double>(size[best_b]);
            const double nk = static_cast<double>(size[k]);
            const double v = ((na + nk) * d[best_a][k] + (nb + nk) * d[best_b][k] -
                              nk * d[best_a][best_b]) /
                             (na + nb + nk);
            d[id][k] = v;
            d[k][id] = v;
        }
        alive[best_a] = 0;
        alive[best_b] = 0;
        alive[id] = 1;
        tree.merges.push_back({best_a, best_b, best, size[id]});
    }
    return tree;
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Deterministic:
// fixed sweep order, fixed convergence threshold.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors) {
    const std::size_t n = a.size();
    eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;

    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
    }
    const double tol = 1e-14 * std::max(1.0, std::sqrt(frob));

    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        }
        if (std::sqrt(2.0 * off) <= tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) <= tol / static_cast<double>(n * n + 1)) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors[k][p], vkq = eigenvectors[k][q];
                    eigenvectors[k][p] = c * vkp - s * vkq;
                    eigenvectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

double euclidean(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace

MdsProjection classical_mds(const SimilarityMatrix& distances, std::size_t dims) {
    validate_distance_matrix(distances);
    const std::size_t n = distances.size();
    if (n <= dims) {
        throw std::invalid_argument("classical_mds: need more points than output dimensions");
    }

    MdsProjection out;
    out.labels = distances.labels;
    out.coordinates.assign(n, Vec(dims, 0.0));

    bool all_zero = true;
    for (std::size_t i = 0; i < n && all_zero; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (distances.values[i][j] != 0.0) {
                all_zero = false;
                break;
            }
        }
    }
    if (all_zero) {
        out.eigenvalues.assign(n, 0.0);
        out.warnings.push_back("all-zero distance matrix; every point projected to the origin");
        return out;
    }

    // Double centering: B = -1/2 J D^2 J.
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double sq = distances.values[i][j] * distances.values[i][j];
            b[i][j] = sq;
            row_mean[i] += sq;
        }
        grand += row_mean[i];
        row_mean[i] /= static_cast<double>(n);
    }
    grand /= static_cast<double>(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b[i][j] = -0.5 * (b[i][j] - row_mean[i] - row_mean[j] + grand);
        }
    }

    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
    jacobi_eigen(std::move(b), eigenvalues, eigenvectors);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (eigenvalues[x] != eigenvalues[y]) return eigenvalues[x] > eigenvalues[y];
        return x < y;
    });

    out.eigenvalues.reserve(n);
    std::size_t negative = 0;
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues.push_back(eigenvalues[order[k]]);
        if (eigenvalues[order[k]] < -1e-12) ++negative;
    }
    if (negative > 0) {
        out.warnings.push_back(std::to_string(negative) +
                               " negative eigenvalue(s) truncated; the distance matrix is not "
                               "exactly Euclidean");
    }

    for (std::size_t k = 0; k < dims; ++k) {
        const double lambda = out.eigenvalues[k];
        if (lambda <= 1e-12) {
            if (lambda < -1e-9) {
                out.warnings.push_back("axis " + std::to_string(k) +
                                       " requested beyond the Euclidean rank; set to zero");
            }
            continue; // axis stays zero
        }
        const double scale = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i) {
            out.coordinates[i][k] = eigenvectors[i][order[k]] * scale;
        }
    }

    // Orientation canonicalization: flip each axis so the coordinate of the
    // lexicographically-first label with a non-negligible value is positive.
    std::vector<std::size_t> lex(n);
    for (std::size_t i = 0; i < n; ++i) lex[i] = i;
    std::sort(lex.begin(), lex.end(),
              [&](std::size_t x, std::size_t y) { return out.labels[x] < out.labels[y]; });
    for (std::size_t k = 0; k < dims; ++k) {
        for (std::size_t idx : lex) {
            const double v = out.coordinates[idx][k];
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) {
                    for (std::size_t i = 0; i < n; ++i) out.coordinates[i][k] = -out.coordinates[i][k];
                }
                break;
            }
        }
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = distances.values[i][j];
            const double eij = euclidean(out.coordinates[i], out.coordinates[j]);
            num += (dij - eij) * (dij - eij);
            den += dij * dij;
        }
    }
    out.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return out;
}

ZoneTestResult zone_permutation_test(const SimilarityMatrix& similarities,
                                     const std::map<std::string, char>& zones,
                                     int n_perm, std::uint64_t seed) {
    const std::size_t n = similarities.size();
    std::vector<char> assignment(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = zones.find(similarities.labels[i]);
        if (it == zones.end()) {
            throw std::invalid_argument("zone test: no zone for language '" +
                                        similarities.labels[i] + "'");
        }
        assignment[i] = it->second;
    }
    std::set<char> distinct(assignment.begin(), assignment.end());
    if (distinct.size() < 2) {
        throw std::invalid_argument("zone test: need at least 2 zones");
    }

    auto stat = [&](const std::vector<char>& zone_of) {
        double ss = 0.0, sc = 0.0;
        std::size_t ns = 0, nc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (zone_of[i] == zone_of[j]) {
                    ss += similarities.values[i][j];
                    ++ns;
                } else {
                    sc += similarities.values[i][j];
                    ++nc;
                }
            }
        }
        struct R {
            double same, cross;
            std::size_t n_same, n_cross;
        };
        return R{ns ? ss / static_cast<double>(ns) : 0.0, nc ? sc / static_cast<double>(nc) : 0.0,
                 ns, nc};
    };

    const auto obs = stat(assignment);
    if (obs.n_same == 0) throw std::invalid_argument("zone test: no same-zone language pair");

    ZoneTestResult res;
    res.same_zone_mean = obs.same;
    res.cross_zone_mean = obs.cross;
    res.n_permutations = n_perm;
    res.seed = seed;
    const double observed = obs.same - obs.cross;
    res.p_value = permutation_pvalue(observed, n_perm, seed, [&](Rng& rng) {
        std::vector<char> shuffled = assignment;
        rng.shuffle(shuffled);
        const auto s = stat(shuffled);
        return s.same - s.cross;
    });
    return res;
}

namespace {

void check_label(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("newick: empty leaf label");
    if (name.find_first_of("();,: \t\n") != std::string::npos) {
        throw std::invalid_argument("newick: label '" + name + "' contains reserved characters");
    }
}

} // namespace

std::string newick_export(const LanguageTree& tree) {
    if (tree.empty()) throw std::invalid_argument("newick_export: empty tree");
    const std::size_t n = tree.leaves.size();
    if (tree.merges.size() + 1 != n) {
        throw std::invalid_argument("newick_export: malformed tree (" +
                                    std::to_string(tree.merges.size()) + " merges for " +
                                    std::to_string(n) + " leaves)");
    }
    for (const auto& l : tree.leaves) check_label(l);
    if (n == 1) return tree.leaves[0] + ";";

    std::vector<double> height(2 * n - 1, 0.0);
    for (std::size_t k = 0; k < tree.merges.size(); ++k) height[n + k] = tree.merges[k].height;

    // Recursive build over cluster ids; children keep (a, b) order so leaf
    // order follows the merge structure deterministically.
    auto build = [&](auto&& self, std::size_t id) -> std::string {
        if (id < n) return tree.leaves[id];
        const auto& m = tree.merges[id - n];
        const double h = height[id];
        return "(" + self(self, m.a) + ":" + format_double(h - height[m.a]) + "," +
               self(self, m.b) + ":" + format_double(h - height[m.b]) + ")";
    };
    return build(build, 2 * n - 2) + ";";
}

std::string newick_of(const TreeNode& node) {
    auto build = [](auto&& self, const TreeNode& n) -> std::string {
        std::string s;
        if (!n.is_leaf()) {
            s += "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += ",";
                s += self(self, n.children[i]);
            }
            s += ")";
        }
        s += n.name;
        if (n.length) s += ":" + format_double(*n.length);
        return s;
    };
    return build(build, node) + ";";
}

namespace {

struct NewickParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit NewickParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r')) {
            ++pos;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("newick parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    static bool is_reserved(char c) {
        return c == '(' || c == ')' || c == ';' || c == ',' || c == ':';
    }

    std::string read_name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && !is_reserved(text[pos]) &&
               !std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return text.substr(start, pos - start);
    }

    TreeNode parse_subtree() {
        skip_ws();
        TreeNode node;
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            for (;;) {
                node.children.push_back(parse_branch());
                skip_ws();
                if (pos >= text.size()) fail("unterminated '('");
                if (text[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            node.name = read_name(); // optional internal label
        } else {
            node.name = read_name();
            if (node.name.empty()) fail("expected a leaf label");
        }
        return node;
    }

    TreeNode parse_branch() {
        TreeNode node = parse_subtree();
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && !is_reserved(text[pos]) &&
                   !std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
            try {
                node.length = parse_double(text.substr(start, pos - start));
            } catch (const std::exception&) {
                fail("invalid branch length");
            }
        }
        return node;
    }
};

} // namespace

TreeNode parse_newick(const std::string& text) {
    NewickParser p(text);
    TreeNode root = p.parse_subtree();
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != ';') p.fail("expected ';'");
    ++p.pos;
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing content after ';'");
    if (root.is_leaf() && root.name.empty()) p.fail("empty tree");
    return root;
}

TreeNode to_tree(const LanguageTree& tree) {
    return parse_newick(newick_export(tree));
}

namespace {

void collect_leaves(const TreeNode& node, std::vector<std::string>& out) {
    if (node.is_leaf()) {
        out.push_back(node.name);
        return;
    }
    for (const auto& c : node.children) collect_leaves(c, out);
}

double node_height(const TreeNode& node, std::vector<double>& heights) {
    if (node.is_leaf()) return 0.0;
    double h = 0.0;
    for (const auto& c : node.children) {
        const double ch = node_height(c, heights) + c.length.value_or(0.0);
        h = std::max(h, ch);
    }
    heights.push_back(h);
    return h;
}

// Collects the non-trivial bipartitions of an (implicitly unrooted) tree as
// canonical keys: the side not containing the reference leaf, sorted and
// joined.
void collect_bipartitions(const TreeNode& node, const std::set<std::string>& all,
                          const std::string& ref, bool is_root, std::set<std::string>& out,
                          std::vector<std::string>& leaves_out) {
    leaves_out.clear();
    std::vector<std::vector<std::string>> child_leaves(node.children.size());
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        std::vector<std::string> sub;
        collect_bipartitions(node.children[i], all, ref, false, out, sub);
        child_leaves[i] = sub;
        leaves_out.insert(leaves_out.end(), sub.begin(), sub.end());
    }
    if (node.is_leaf()) {
        leaves_out.push_back(node.name);
        return;
    }
    if (is_root) return; // the root edge carries no split
    std::set<std::string> clade(leaves_out.begin(), leaves_out.end());
    if (clade.size() < 2 || all.size() - clade.size() < 2) return; // trivial
    std::vector<std::string> side;
    if (clade.count(ref)) {
        for (const auto& l : all) {
            if (!clade.count(l)) side.push_back(l);
        }
    } else {
        side.assign(clade.begin(), clade.end());
    }
    out.insert(join(side, "|"));
}

std::set<std::string> bipartition_set(const TreeNode& root, const std::set<std::string>& all) {
    std::set<std::string> out;
    std::vector<std::string> scratch;
    collect_bipartitions(root, all, *all.begin(), true, out, scratch);
    return out;
}

} // namespace

std::vector<std::string> tree_leaves(const TreeNode& node) {
    std::vector<std::string> out;
    collect_leaves(node, out);
    return out;
}

std::vector<double> merge_heights(const TreeNode& root) {
    std::vector<double> heights;
    node_height(root, heights);
    std::sort(heights.begin(), heights.end());
    return heights;
}

std::size_t robinson_foulds(const TreeNode& a, const TreeNode& b) {
    auto la = tree_leaves(a);
    auto lb = tree_leaves(b);
    std::set<std::string> sa(la.begin(), la.end());
    std::set<std::string> sb(lb.begin(), lb.end());
    if (sa.size() != la.size() || sb.size() != lb.size()) {
        throw std::invalid_argument("robinson_foulds: duplicate leaf labels");
    }
    if (sa != sb) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                      std::back_inserter(diff));
        throw std::invalid_argument("robinson_foulds: leaf sets differ: " + join(diff, ", "));
    }
    const auto pa = bipartition_set(a, sa);
    const auto pb = bipartition_set(b, sb);
    std::size_t rf = 0;
    for (const auto& p : pa) rf += !pb.count(p);
    for (const auto& p : pb) rf += !pa.count(p);
    return rf;
}

std::size_t robinson_foulds(const LanguageTree& a, const TreeNode& b) {
    return robinson_foulds(to_tree(a), b);
}

std::size_t robinson_foulds(const LanguageTree& a, const LanguageTree& b) {
    return robinson_foulds(to_tree(a), to_tree(b));
}

void write_newick(const std::string& path, const LanguageTree& tree) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << newick_export(tree) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_mds(const std::string& path, const MdsProjection& projection) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "language";
    const std::size_t dims = projection.coordinates.empty() ? 0 : projection.coordinates[0].size();
    static const char* kAxis = "xyzw";
    for (std::size_t k = 0; k < dims; ++k) {
        out << '\t' << (k < 4 ? std::string(1, kAxis[k]) : "c" + std::to_string(k));
    }
    out << '\n';
    for (std::size_t i = 0; i < projection.labels.size(); ++i) {
        out << projection.labels[i];
        for (std::size_t k = 0; k < dims; ++k) out << '\t' << format_double(projection.coordinates[i][k]);
        out << '\n';
    }
    out << "# stress=" << format_double(projection.stress) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_zone_summary(const std::string& path, const ZoneTestResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "same_zone_mean\t" << format_double(result.same_zone_mean) << '\n'
        << "cross_zone_mean\t" << format_double(result.cross_zone_mean) << '\n'
        << "p_value\t" << format_double(result.p_value) << '\n'
        << "n_permutations\t" << result.n_permutations << '\n'
        << "seed\t" << result.seed << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
