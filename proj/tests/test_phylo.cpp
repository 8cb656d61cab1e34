#include "bantulex/phylo.hpp"

#include "bantulex/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace bantulex;

namespace {

SimilarityMatrix matrix(std::vector<std::string> labels, std::vector<std::vector<double>> values) {
    SimilarityMatrix m;
    m.labels = std::move(labels);
    m.values = std::move(values);
    return m;
}

} // namespace

TEST_CASE("two points merge at their distance") {
    const auto tree = ward_linkage(matrix({"A", "B"}, {{0, 0.004}, {0.004, 0}}));
    REQUIRE(tree.merges.size() == 1);
    CHECK(tree.merges[0].height == doctest::Approx(0.004));
    CHECK(tree.merges[0].a == 0);
    CHECK(tree.merges[0].b == 1);
    CHECK(newick_export(tree) == "(A:0.004,B:0.004);");
}

TEST_CASE("three-point Ward follows the Lance-Williams update") {
    // d(A,B)=1, d(A,C)=4, d(B,C)=5: merge (A,B) at 1, then
    // d(AB,C) = (2*4 + 2*5 - 1*1)/3 = 17/3.
    const auto tree =
        ward_linkage(matrix({"A", "B", "C"}, {{0, 1, 4}, {1, 0, 5}, {4, 5, 0}}));
    REQUIRE(tree.merges.size() == 2);
    CHECK(tree.merges[0].height == doctest::Approx(1.0));
    CHECK(tree.merges[1].height == doctest::Approx(17.0 / 3.0).epsilon(1e-12));
    CHECK(tree.merges[1].a == 2); // leaf C
    CHECK(tree.merges[1].b == 3); // cluster {A,B}

    // round trip: re-parsing the export reproduces topology and heights
    const auto parsed = parse_newick(newick_export(tree));
    const auto heights = merge_heights(parsed);
    REQUIRE(heights.size() == 2);
    CHECK(heights[0] == doctest::Approx(1.0));
    CHECK(heights[1] == doctest::Approx(17.0 / 3.0).epsilon(1e-9));
    CHECK(robinson_foulds(tree, parsed) == 0);
}

TEST_CASE("ward rejects malformed input") {
    CHECK_THROWS_AS(ward_linkage(matrix({"A", "B"}, {{0, 1}, {2, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(ward_linkage(matrix({"A", "B"}, {{0, -1}, {-1, 0}})), std::invalid_argument);
    CHECK_THROWS_AS(ward_linkage(matrix({"A"}, {{0}})), std::invalid_argument);
}

TEST_CASE("ward heights are monotone and label-permutation equivariant") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4 + rng.next_below(8);
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("L" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                d[i][j] = d[j][i] = 0.05 + rng.next_double();
            }
        }
        const auto tree = ward_linkage(matrix(labels, d));
        for (std::size_t k = 1; k < tree.merges.size(); ++k) {
            CHECK(tree.merges[k].height >= tree.merges[k - 1].height);
        }

        // permute labels: topology must follow the permutation
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        rng.shuffle(perm);
        std::vector<std::string> plabels(n);
        std::vector<std::vector<double>> pd(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            plabels[i] = labels[perm[i]];
            for (std::size_t j = 0; j < n; ++j) pd[i][j] = d[perm[i]][perm[j]];
        }
        const auto ptree = ward_linkage(matrix(plabels, pd));
        CHECK(robinson_foulds(tree, ptree) == 0);
        CHECK(tree.merges.back().height ==
              doctest::Approx(ptree.merges.back().height).epsilon(1e-9));
    }
}

TEST_CASE("classical MDS reconstructs Euclidean configurations") {
    SUBCASE("equilateral triangle") {
        const auto mds = classical_mds(
            matrix({"A", "B", "C"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 2);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                double d2 = 0;
                for (std::size_t k = 0; k < 2; ++k) {
                    const double diff = mds.coordinates[i][k] - mds.coordinates[j][k];
                    d2 += diff * diff;
                }
                CHECK(std::sqrt(d2) == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
        CHECK(mds.stress == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("three collinear points") {
        const auto mds = classical_mds(
            matrix({"A", "B", "C"}, {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}), 2);
        double d01 = std::abs(mds.coordinates[0][0] - mds.coordinates[1][0]);
        double d12 = std::abs(mds.coordinates[1][0] - mds.coordinates[2][0]);
        double d02 = std::abs(mds.coordinates[0][0] - mds.coordinates[2][0]);
        CHECK(d01 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(d12 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(d02 == doctest::Approx(3.0).epsilon(1e-9));
        REQUIRE(mds.eigenvalues.size() == 3);
        CHECK(std::abs(mds.eigenvalues[1]) < 1e-9); // rank 1 configuration
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(mds.coordinates[i][1]) < 1e-9);
    }
    SUBCASE("centroid at the origin") {
        const auto mds = classical_mds(
            matrix({"A", "B", "C", "D"},
                   {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}),
            2);
        for (std::size_t k = 0; k < 2; ++k) {
            double sum = 0;
            for (std::size_t i = 0; i < 4; ++i) sum += mds.coordinates[i][k];
            CHECK(std::abs(sum) < 1e-9);
        }
    }
    SUBCASE("all-zero distances warn and collapse to the origin") {
        const auto mds = classical_mds(matrix({"A", "B", "C"}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}), 2);
        REQUIRE(mds.warnings.size() == 1);
        for (const auto& p : mds.coordinates) CHECK(p == Vec{0.0, 0.0});
    }
    SUBCASE("too few points rejected") {
        CHECK_THROWS_AS(classical_mds(matrix({"A"}, {{0}}), 2), std::invalid_argument);
        CHECK_THROWS_AS(classical_mds(matrix({"A", "B"}, {{0, 1}, {1, 0}}), 2),
                        std::invalid_argument);
    }
}

TEST_CASE("MDS orientation is canonical: first label non-negative") {
    const auto m = matrix({"bbb", "aaa", "ccc", "ddd"},
                          {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
    const auto mds = classical_mds(m, 2);
    // "aaa" is the lexicographically-first label (index 1)
    for (std::size_t k = 0; k < 2; ++k) {
        bool found = false;
        for (const auto& label : std::vector<std::string>{"aaa", "bbb", "ccc", "ddd"}) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (mds.labels[i] == label && std::abs(mds.coordinates[i][k]) > 1e-12) {
                    CHECK(mds.coordinates[i][k] > 0.0);
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }
}

TEST_CASE("non-Euclidean input truncates negative eigenvalues with a warning") {
    // Violates the triangle inequality strongly.
    const auto mds = classical_mds(
        matrix({"A", "B", "C", "D"},
               {{0, 10, 1, 1}, {10, 0, 1, 1}, {1, 1, 0, 10}, {1, 1, 10, 0}}),
        2);
    CHECK(!mds.warnings.empty());
    CHECK(mds.eigenvalues.back() < 0.0);
}

TEST_CASE("newick export and parse") {
    LanguageTree empty;
    CHECK_THROWS_AS(newick_export(empty), std::invalid_argument);

    const auto parsed = parse_newick("((A:1,B:1):2,C:3)root;");
    CHECK(tree_leaves(parsed) == std::vector<std::string>{"A", "B", "C"});
    CHECK(parsed.name == "root");
    CHECK_THROWS_AS(parse_newick("((A,B)"), std::runtime_error);
    CHECK_THROWS_AS(parse_newick(""), std::runtime_error);

    const auto ref = parse_newick(testutil::read_file(testutil::fixture("reference_tree.nwk")));
    CHECK(tree_leaves(ref).size() == 14);
}

TEST_CASE("newick round trip preserves random Ward trees") {
    Rng rng(2718);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 3 + rng.next_below(10);
        std::vector<std::string> labels;
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 0.1 + rng.next_double();
        }
        const auto tree = ward_linkage(matrix(labels, d));
        const auto parsed = parse_newick(newick_export(tree));
        CHECK(robinson_foulds(tree, parsed) == 0);
        const auto heights = merge_heights(parsed);
        std::vector<double> expected;
        for (const auto& m : tree.merges) expected.push_back(m.height);
        std::sort(expected.begin(), expected.end());
        REQUIRE(heights.size() == expected.size());
        for (std::size_t k = 0; k < heights.size(); ++k) {
            CHECK(heights[k] == doctest::Approx(expected[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("robinson-foulds distances on known topologies") {
    const auto a = parse_newick("((A,B),(C,D));");
    const auto b = parse_newick("((A,C),(B,D));");
    const auto star = parse_newick("(A,B,C,D);");
    CHECK(robinson_foulds(a, a) == 0);
    CHECK(robinson_foulds(a, b) == 2);
    CHECK(robinson_foulds(star, a) == 1);
    CHECK(robinson_foulds(star, star) == 0);

    const auto other = parse_newick("((A,B),(C,E));");
    CHECK_THROWS_WITH_AS(robinson_foulds(a, other), doctest::Contains("D, E"),
                         std::invalid_argument);
}

TEST_CASE("zone permutation test against the exhaustive enumeration") {
    // Two zones of two languages; within-similarity 1, cross 0. Of the 3
    // distinct pairings, only the observed one reaches the statistic, so the
    // exact p is 1/3.
    const auto sim = matrix({"A", "B", "C", "D"},
                            {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
    const std::map<std::string, char> zones = {{"A", 'E'}, {"B", 'E'}, {"C", 'S'}, {"D", 'S'}};
    const int n_perm = 10000;
    const auto res = zone_permutation_test(sim, zones, n_perm, 77);
    CHECK(res.same_zone_mean == doctest::Approx(1.0));
    CHECK(res.cross_zone_mean == doctest::Approx(0.0));
    const double exact = 1.0 / 3.0;
    const double se = std::sqrt(exact * (1.0 - exact) / n_perm);
    CHECK(std::abs(res.p_value - exact) <= 2.0 * se + 1.0 / (n_perm + 1.0));
}

TEST_CASE("all-equal similarities give zone p = 1.0") {
    const auto sim = matrix({"A", "B", "C", "D"},
                            {{1, .5, .5, .5}, {.5, 1, .5, .5}, {.5, .5, 1, .5}, {.5, .5, .5, 1}});
    const std::map<std::string, char> zones = {{"A", 'E'}, {"B", 'E'}, {"C", 'S'}, {"D", 'S'}};
    const auto res = zone_permutation_test(sim, zones, 2000, 7);
    CHECK(res.p_value == 1.0);
}

TEST_CASE("zone test preconditions") {
    const auto sim = matrix({"A", "B"}, {{1, .5}, {.5, 1}});
    CHECK_THROWS_AS(zone_permutation_test(sim, {{"A", 'E'}, {"B", 'E'}}, 100, 1),
                    std::invalid_argument); // single zone
    CHECK_THROWS_AS(zone_permutation_test(sim, {{"A", 'E'}, {"B", 'S'}}, 100, 1),
                    std::invalid_argument); // no same-zone pair
    CHECK_THROWS_AS(zone_permutation_test(sim, {{"A", 'E'}}, 100, 1),
                    std::invalid_argument); // missing zone
}

TEST_CASE("zone test is deterministic under the seeding contract") {
    Rng rng(44);
    const std::size_t n = 8;
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 1.0));
    std::vector<std::string> labels;
    std::map<std::string, char> zones;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("L" + std::to_string(i));
        zones[labels.back()] = i < 4 ? 'E' : 'S';
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            v[i][j] = v[j][i] = rng.next_double();
        }
    }
    const auto a = zone_permutation_test(matrix(labels, v), zones, 3000, 11);
    const auto b = zone_permutation_test(matrix(labels, v), zones, 3000, 11);
    CHECK(a.p_value == b.p_value);
}
