#pragma once
// Phylogenetic structure recovery: Ward-linkage dendrogram, classical
// (Torgerson) MDS, zone permutation test, Newick serialization, and
// Robinson-Foulds topology comparison.
//
// Conventions (they differ across tools, so they are pinned here):
//   - similarity converts to distance as d = 1 - s;
//   - Newick branch lengths are merge-height differences (a two-leaf tree
//     merged at height h serializes as "(A:h,B:h);");
//   - MDS axes are flipped so the lexicographically-first label has a
//     non-negative coordinate, giving byte-stable output.

#include "bantulex/geometry.hpp"
#include "bantulex/stats.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bantulex {

struct LanguageTree {
    std::vector<std::string> leaves; // cluster ids 0..n-1 in this order
    struct Merge {
        std::size_t a = 0; // cluster ids; merge k creates cluster n + k
        std::size_t b = 0;
        double height = 0.0;
        std::size_t size = 0; // members of the new cluster
    };
    std::vector<Merge> merges; // n - 1 entries, heights non-decreasing

    bool empty() const { return leaves.empty(); }
};

// d = 1 - s with an exactly zero diagonal.
SimilarityMatrix distance_from_similarity(const SimilarityMatrix& similarity);

// Agglomerative Ward clustering via the Lance-Williams update
//   d(i u j, k) = ((n_i + n_k) d(i,k) + (n_j + n_k) d(j,k) - n_k d(i,j))
//                 / (n_i + n_j + n_k).
// Input must be symmetric with a zero diagonal and non-negative entries.
// Ties break on the smallest (id_a, id_b) pair, which pins the topology on
// exactly-tied data.
LanguageTree ward_linkage(const SimilarityMatrix& distances);

struct MdsProjection {
    std::vector<std::string> labels;
    std::vector<Vec> coordinates;    // one row per label, `dims` columns
    double stress = 0.0;             // Kruskal stress-1 against the input
    std::vector<double> eigenvalues; // all n, descending
    std::vector<std::string> warnings;

    const Vec& point(std::size_t i) const { return coordinates[i]; }
};

// Classical MDS: double-center -1/2 J D^2 J and take the top `dims`
// eigenpairs. Negative eigenvalues are truncated and reported (1 - cosine
// matrices need not be Euclidean). Requires n > dims.
MdsProjection classical_mds(const SimilarityMatrix& distances, std::size_t dims = 2);

struct ZoneTestResult {
    double same_zone_mean = 0.0;
    double cross_zone_mean = 0.0;
    double p_value = 1.0;
    int n_permutations = 0;
    std::uint64_t seed = 0;
};

// One-sided permutation test of same-zone vs cross-zone similarity; zone
// labels are permuted over languages under the shared seeding contract.
ZoneTestResult zone_permutation_test(const SimilarityMatrix& similarities,
                                     const std::map<std::string, char>& zones,
                                     int n_perm = 10000, std::uint64_t seed = 0);

// General rooted tree, as parsed from Newick.
struct TreeNode {
    std::string name;                // leaves carry names
    std::optional<double> length;    // branch to parent
    std::vector<TreeNode> children;

    bool is_leaf() const { return children.empty(); }
};

std::string newick_export(const LanguageTree& tree);
std::string newick_of(const TreeNode& node); // general serializer
TreeNode parse_newick(const std::string& text);
TreeNode to_tree(const LanguageTree& tree);
std::vector<std::string> tree_leaves(const TreeNode& node);

// Recovers merge heights from an exported tree (leaf depth accumulates the
// branch lengths back to each merge).
std::vector<double> merge_heights(const TreeNode& root);

// Unrooted Robinson-Foulds distance: the number of non-trivial bipartitions
// present in exactly one tree. Leaf sets must match; a mismatch is fatal and
// the message lists the symmetric difference.
std::size_t robinson_foulds(const TreeNode& a, const TreeNode& b);
std::size_t robinson_foulds(const LanguageTree& a, const TreeNode& b);
std::size_t robinson_foulds(const LanguageTree& a, const LanguageTree& b);

void write_newick(const std::string& path, const LanguageTree& tree);
void write_mds(const std::string& path, const MdsProjection& projection);
void write_zone_summary(const std::string& path, const ZoneTestResult& result);

} // namespace bantulex
