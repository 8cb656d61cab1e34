#include "bantulex/discovery.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace bantulex;
using testutil::record;

namespace {

// A planted toy corpus: `sets` lists the (language, lemma) members per
// cognate set; every set gets an almost-orthogonal direction so within-set
// cosine is ~1 and cross-set cosine ~0.
std::vector<EmbeddingRecord> planted(const std::vector<std::vector<std::pair<const char*, const char*>>>& sets) {
    std::vector<EmbeddingRecord> out;
    const std::size_t dim = sets.size() + 1;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (const auto& [lang, lemma] : sets[s]) {
            Vec v(dim, 0.0);
            v[s] = 1.0;
            v[dim - 1] = 0.01 * static_cast<double>(out.size()); // break exact ties
            out.push_back(record(lang, lemma, Pos::Verb, std::move(v)));
        }
    }
    return out;
}

} // namespace

TEST_CASE("surface-shared candidates respect the language threshold") {
    std::vector<EmbeddingRecord> records;
    const char* langs[] = {"l01", "l02", "l03", "l04", "l05", "l06", "l07",
                           "l08", "l09", "l10", "l11", "l12", "l13", "l14"};
    for (const char* l : langs) records.push_back(record(l, "ona", Pos::Verb, {1, 0}));
    for (int i = 0; i < 4; ++i) records.push_back(record(langs[i], "tala", Pos::Noun, {0, 1}));

    const auto at5 = surface_shared_candidates(records, 5);
    REQUIRE(at5.size() == 1);
    CHECK(at5[0].root == "ona");
    CHECK(at5[0].language_count == 14);
    CHECK(at5[0].pos == Pos::Verb);
    CHECK(at5[0].provenance == Provenance::SurfaceShared);

    // min_languages 1 degenerates to one candidate per distinct lemma
    const auto at1 = surface_shared_candidates(records, 1);
    CHECK(at1.size() == 2);
}

TEST_CASE("surface matching folds case and picks the majority surface as root") {
    std::vector<EmbeddingRecord> records = {
        record("aaa", "Ona", Pos::Verb, {1, 0}),
        record("bbb", "ona", Pos::Verb, {1, 0}),
        record("ccc", "ona", Pos::Verb, {1, 0}),
    };
    const auto cands = surface_shared_candidates(records, 3);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].root == "ona"); // 2 of 3 members
    CHECK(cands[0].members.size() == 3);
}

TEST_CASE("neighbor clustering connects by threshold or mutual nearest neighbor") {
    SUBCASE("two records over the threshold form a candidate") {
        std::vector<EmbeddingRecord> records = {
            record("aaa", "x", Pos::Verb, {1.0, 0.1}),
            record("aaa", "pad", Pos::Verb, {-1.0, 0.3}),
            record("bbb", "y", Pos::Verb, {1.0, 0.12}),
            record("bbb", "pad2", Pos::Verb, {-1.0, 0.28}),
        };
        const auto space = center_by_language(records);
        const auto cands = neighbor_cluster_candidates(space, 0.80, 2);
        REQUIRE(cands.size() == 2); // {x,y} and {pad,pad2}
        CHECK(cands[0].members.size() == 2);
    }
    SUBCASE("orthogonal vectors produce no candidates") {
        std::vector<EmbeddingRecord> records;
        for (int l = 0; l < 3; ++l) {
            for (int w = 0; w < 3; ++w) {
                Vec v(9, 0.0);
                v[static_cast<std::size_t>(3 * l + w)] = 1.0;
                records.push_back(record("l" + std::to_string(l), "w" + std::to_string(w),
                                         Pos::Verb, std::move(v)));
            }
        }
        // raw records used directly: already zero-mean enough for the test
        CenteredSpace space;
        space.records = records;
        space.dimension = 9;
        // mutual nearest neighbors still pair records, so demand 3 languages
        const auto cands = neighbor_cluster_candidates(space, 0.9, 3);
        CHECK(cands.empty());
    }
    SUBCASE("threshold outside (0,1) is fatal") {
        CenteredSpace space;
        space.records = {record("aaa", "x", Pos::Verb, {1, 0})};
        space.dimension = 2;
        CHECK_THROWS_AS(neighbor_cluster_candidates(space, 1.0, 2), std::invalid_argument);
        CHECK_THROWS_AS(neighbor_cluster_candidates(space, 0.0, 2), std::invalid_argument);
    }
}

TEST_CASE("planted cognate sets are recovered exactly") {
    const auto records = planted({
        {{"l01", "ona"}, {"l02", "bona"}, {"l03", "wona"}},
        {{"l01", "tatu"}, {"l02", "tato"}, {"l03", "datu"}},
        {{"l01", "kumi"}, {"l02", "kumi"}, {"l03", "gumi"}},
    });
    CenteredSpace space;
    space.records = records;
    space.dimension = records.front().vector.size();
    auto cands = neighbor_cluster_candidates(space, 0.5, 3);
    REQUIRE(cands.size() == 3);
    std::set<std::set<std::string>> got;
    for (const auto& c : cands) {
        std::set<std::string> members;
        for (const auto& m : c.members) members.insert(m.lemma);
        got.insert(members);
    }
    CHECK(got == std::set<std::set<std::string>>{
                     {"ona", "bona", "wona"}, {"tatu", "tato", "datu"}, {"kumi", "gumi"}});

    // every edge inside a candidate satisfies the edge predicate: re-verify
    compute_coherence(cands, space);
    for (const auto& c : cands) {
        REQUIRE(c.coherence.has_value());
        CHECK(c.coherence->min_sim >= 0.5);
    }
}

TEST_CASE("component soundness: members are connected under the edge predicate") {
    // Rebuild the edge set of each recovered component from scratch and
    // check the component is connected by threshold-or-mutual-NN edges.
    Rng rng(606);
    std::vector<EmbeddingRecord> records;
    for (int l = 0; l < 5; ++l) {
        for (int w = 0; w < 10; ++w) {
            Vec v(6);
            for (auto& x : v) x = rng.next_normal();
            records.push_back(record("l" + std::to_string(l), "w" + std::to_string(w), Pos::Verb,
                                     std::move(v)));
        }
    }
    const auto space = center_by_language(records);
    const double threshold = 0.45;
    const auto cands = neighbor_cluster_candidates(space, threshold, 2);
    REQUIRE(!cands.empty());

    // nearest cross-lingual neighbor of every record, recomputed naively
    const auto& recs = space.records;
    std::vector<std::size_t> nn(recs.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        double best = -2.0;
        for (std::size_t j = 0; j < recs.size(); ++j) {
            if (i == j || recs[i].language == recs[j].language) continue;
            const double s = cosine(recs[i].vector, recs[j].vector);
            if (s > best) {
                best = s;
                nn[i] = j;
            }
        }
    }
    auto has_edge = [&](std::size_t i, std::size_t j) {
        if (recs[i].language == recs[j].language) return false;
        if (cosine(recs[i].vector, recs[j].vector) >= threshold) return true;
        return nn[i] == j && nn[j] == i;
    };

    for (const auto& c : cands) {
        const auto idx = resolve_member_records(c, recs);
        REQUIRE(idx.size() >= 2);
        // BFS over the re-verified edges must reach every member
        std::set<std::size_t> visited{idx[0]};
        std::vector<std::size_t> frontier{idx[0]};
        while (!frontier.empty()) {
            const std::size_t cur = frontier.back();
            frontier.pop_back();
            for (std::size_t other : idx) {
                if (!visited.count(other) && has_edge(cur, other)) {
                    visited.insert(other);
                    frontier.push_back(other);
                }
            }
        }
        CHECK(visited.size() == idx.size());
    }
}

TEST_CASE("coherence statistics match hand-computed values") {
    // three cross-lingual records with pairwise cosines 1, 0, 0
    std::vector<EmbeddingRecord> records = {
        record("aaa", "u", Pos::Verb, {1, 0}),
        record("bbb", "v", Pos::Verb, {1, 0}),
        record("ccc", "w", Pos::Verb, {0, 1}),
    };
    CenteredSpace space;
    space.records = records;
    space.dimension = 2;
    CognateCandidate c;
    c.members = {{"aaa", "u"}, {"bbb", "v"}, {"ccc", "w"}};
    std::vector<CognateCandidate> cands = {c};
    compute_coherence(cands, space);
    REQUIRE(cands[0].coherence.has_value());
    const auto& st = *cands[0].coherence;
    CHECK(st.mean_sim == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(st.min_sim == doctest::Approx(0.0));
    // population stdev of {1, 0, 0}
    CHECK(st.stdev_sim == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("coherence is undefined without a cross-lingual pair") {
    std::vector<EmbeddingRecord> records = {
        record("aaa", "u", Pos::Verb, {1, 0}),
        record("aaa", "v", Pos::Verb, {0, 1}),
    };
    CenteredSpace space;
    space.records = records;
    space.dimension = 2;
    CognateCandidate c;
    c.members = {{"aaa", "u"}, {"aaa", "v"}};
    std::vector<CognateCandidate> cands = {c};
    compute_coherence(cands, space);
    CHECK(!cands[0].coherence.has_value());
}

TEST_CASE("ranking is by language count, then mean similarity, then root") {
    auto mk = [](const char* root, std::size_t langs, double mean) {
        CognateCandidate c;
        c.root = root;
        c.language_count = langs;
        CoherenceStats st;
        st.mean_sim = mean;
        c.coherence = st;
        return c;
    };
    std::vector<CognateCandidate> cands = {
        mk("umuntu", 8, 0.92), mk("ng'ombe", 9, 0.91), mk("aaa", 8, 0.92), mk("zzz", 8, 0.99)};
    score_and_rank(cands);
    CHECK(cands[0].root == "ng'ombe"); // 9 languages first
    CHECK(cands[1].root == "zzz");     // higher mean among the 8s
    CHECK(cands[2].root == "aaa");     // tie broken lexicographically
    CHECK(cands[3].root == "umuntu");
}

TEST_CASE("merging surface and neighbor candidates marks shared ones as both") {
    std::vector<EmbeddingRecord> records;
    for (const char* l : {"l01", "l02", "l03", "l04", "l05"}) {
        Vec v(3, 0.0);
        v[0] = 1.0;
        records.push_back(record(l, "ona", Pos::Verb, std::move(v)));
    }
    Vec w(3, 0.0);
    w[1] = 1.0;
    records.push_back(record("l01", "lone", Pos::Verb, std::move(w)));

    const auto surface = surface_shared_candidates(records, 5);
    CenteredSpace space;
    space.records = records;
    space.dimension = 3;
    const auto neighbor = neighbor_cluster_candidates(space, 0.5, 5);
    const auto merged = merge_candidates(surface, neighbor, records);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].provenance == Provenance::Both);
    CHECK(merged[0].language_count == 5);
}

TEST_CASE("discovery is deterministic and monotone in its thresholds") {
    Rng rng(321);
    std::vector<EmbeddingRecord> records;
    for (int l = 0; l < 6; ++l) {
        for (int w = 0; w < 12; ++w) {
            Vec v(8);
            for (auto& x : v) x = rng.next_normal();
            records.push_back(record("l" + std::to_string(l), "w" + std::to_string(w % 7),
                                     Pos::Verb, std::move(v)));
        }
    }
    const auto space = center_by_language(records);

    const auto path_a = testutil::write_temp("disc_a.tsv", "");
    const auto path_b = testutil::write_temp("disc_b.tsv", "");
    auto run = [&](const std::string& path, double thr, std::size_t min_lang) {
        auto surface = surface_shared_candidates(records, min_lang);
        auto neighbor = neighbor_cluster_candidates(space, thr, min_lang);
        auto merged = merge_candidates(surface, neighbor, records);
        compute_coherence(merged, space);
        score_and_rank(merged);
        write_candidates(path, merged);
        return merged;
    };
    const auto a = run(path_a, 0.6, 2);
    const auto b = run(path_b, 0.6, 2);
    CHECK(testutil::read_file(path_a) == testutil::read_file(path_b)); // byte-identical

    // raising min_languages never adds a candidate
    const auto strict = run(path_b, 0.6, 3);
    CHECK(strict.size() <= a.size());

    // raising the threshold never grows a component
    const auto n_loose = neighbor_cluster_candidates(space, 0.3, 2);
    const auto n_tight = neighbor_cluster_candidates(space, 0.9, 2);
    std::size_t loose_max = 0, tight_max = 0;
    for (const auto& c : n_loose) loose_max = std::max(loose_max, c.members.size());
    for (const auto& c : n_tight) tight_max = std::max(tight_max, c.members.size());
    CHECK(tight_max <= loose_max);
}

TEST_CASE("cross-source agreement classifies strong, weak, and not-evaluable") {
    // Primary candidates over two languages; second source agrees on "ona",
    // disagrees on "tatu", and covers only one member of "kumi".
    std::vector<CognateCandidate> cands(3);
    cands[0].root = "ona";
    cands[0].members = {{"aaa", "ona"}, {"bbb", "ona"}};
    cands[1].root = "tatu";
    cands[1].members = {{"aaa", "tatu"}, {"bbb", "tatu"}};
    cands[2].root = "kumi";
    cands[2].members = {{"aaa", "kumi"}, {"bbb", "kumi"}};

    // Each language's vectors sum to zero, so centering is the identity and
    // the intended cosines survive it.
    std::vector<EmbeddingRecord> second = {
        record("aaa", "ona", Pos::Verb, {1, 0, 0.2}),
        record("aaa", "tatu", Pos::Verb, {0, 1, -0.2}),
        record("aaa", "kumi", Pos::Verb, {0.3, 0.3, 1.0}),
        record("aaa", "pad", Pos::Verb, {-1.3, -1.3, -1.0}),
        record("bbb", "ona", Pos::Verb, {1, 0.05, 0.2}),
        record("bbb", "tatu", Pos::Verb, {0.9, -0.8, -0.2}),
        record("bbb", "pad", Pos::Verb, {-1.9, 0.75, 0.0}),
    };
    const std::size_t strong = cross_source_agreement(cands, second, 0.7);
    CHECK(strong == 1);
    CHECK(cands[0].agreement == Agreement::Strong);
    CHECK(cands[1].agreement == Agreement::Weak);
    CHECK(cands[2].agreement == Agreement::NotEvaluable);

    CHECK_THROWS_AS(cross_source_agreement(cands, {}, 0.7), std::invalid_argument);
}

TEST_CASE("candidate TSV round trip preserves every field") {
    const auto cands = read_candidates(testutil::fixture("top_noun_candidates.tsv"));
    REQUIRE(cands.size() == 11);
    CHECK(cands[0].root == "ng'ombe");
    CHECK(cands[0].language_count == 9);
    CHECK(cands[0].gloss == "cow");
    CHECK(cands[0].members.size() == 9);
    REQUIRE(cands[0].coherence.has_value());
    CHECK(cands[0].coherence->mean_sim == doctest::Approx(0.91));

    const auto path = testutil::write_temp("cand_roundtrip.tsv", "");
    write_candidates(path, cands);
    const auto again = read_candidates(path);
    REQUIRE(again.size() == cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        CHECK(again[i].root == cands[i].root);
        CHECK(again[i].members == cands[i].members);
        CHECK(again[i].gloss == cands[i].gloss);
    }
}
