// End-to-end tests of the command-line tool; every case spawns the real
// binary.

#include "bantulex/corpus_io.hpp"
#include "bantulex/discovery.hpp"
#include "bantulex/manifest.hpp"
#include "bantulex/text.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>

using namespace bantulex;

namespace {

int run_cli(const std::string& args, const std::string& log) {
    const std::string cmd =
        std::string(BANTULEX_CLI) + " " + args + " >" + log + ".out 2>" + log + ".err";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("discover finds the lemma shared by all 14 languages") {
    const std::string out = testutil::temp_dir("cli_discover");
    REQUIRE(run_cli("discover --embeddings " + testutil::fixture("tiny_embeddings.tsv") +
                        " --languages " + testutil::fixture("languages.tsv") + " --out " + out,
                    out + "/log") == 0);
    const auto cands = read_candidates(out + "/candidates.tsv");
    bool found = false;
    for (const auto& c : cands) {
        if (c.root == "ona") {
            found = true;
            CHECK(c.language_count == 14);
            CHECK(c.pos == Pos::Verb);
        }
        CHECK(c.language_count >= 5); // "tala" (4 languages) must not appear
    }
    CHECK(found);

    // a threshold above the language count yields zero candidates, exit 0
    REQUIRE(run_cli("discover --embeddings " + testutil::fixture("tiny_embeddings.tsv") +
                        " --min-languages 15 --out " + out,
                    out + "/log2") == 0);
    CHECK(read_candidates(out + "/candidates.tsv").empty());
}

TEST_CASE("missing inputs exit non-zero with a diagnostic") {
    const std::string out = testutil::temp_dir("cli_missing");
    CHECK(run_cli("discover --embeddings /nonexistent.tsv --out " + out, out + "/log") != 0);
    const auto err = testutil::read_file(out + "/log.err");
    CHECK(err.find("error:") != std::string::npos);

    CHECK(run_cli("validate --candidates /nonexistent.tsv --blr3 x --asjp y --out " + out,
                  out + "/log2") != 0);
    CHECK(run_cli("bogus-subcommand --out " + out, out + "/log3") != 0);
}

TEST_CASE("randomized commands demand a seed") {
    const std::string out = testutil::temp_dir("cli_seed");
    const int rc = run_cli("simulate --out " + out, out + "/log");
    CHECK(rc != 0);
    const auto err = testutil::read_file(out + "/log.err");
    CHECK(err.find("--seed is mandatory") != std::string::npos);
}

TEST_CASE("an empty candidate list validates to an empty report, exit 0") {
    const std::string out = testutil::temp_dir("cli_empty");
    const auto empty = testutil::write_temp(
        "empty_candidates.tsv",
        "root\tpos\tlanguage_count\tlanguages\tmean_sim\tmin_sim\tstdev_sim\tprovenance"
        "\tagreement\tgloss\tmembers\n");
    REQUIRE(run_cli("validate --candidates " + empty + " --blr3 " +
                        testutil::fixture("reconstructions_nouns.tsv") + " --asjp " +
                        testutil::fixture("wordlist_basic.tsv") + " --asjp-concepts " +
                        testutil::fixture("concepts_basic.txt") + " --out " + out,
                    out + "/log") == 0);
    const auto report = testutil::read_file(out + "/validation.tsv");
    CHECK(report == "root\tlanguage_count\tblr3_form\tblr3_tier\tasjp_concept\tstatus\n");
}

TEST_CASE("nounclass without noun records exits non-zero") {
    const std::string out = testutil::temp_dir("cli_nonoun");
    const auto verbs_only = testutil::write_temp("verbs_only.tsv",
                                                 "#dim=2\n"
                                                 "aaa\tona\tverb\t-\t-\t1 0\n"
                                                 "bbb\tona\tverb\t-\t-\t0 1\n");
    const int rc = run_cli("nounclass --embeddings " + verbs_only + " --seed 3 --out " + out,
                           out + "/log");
    CHECK(rc != 0);
    CHECK(testutil::read_file(out + "/log.err").find("no noun records") != std::string::npos);
}

TEST_CASE("a 2-language corpus still produces a single-merge dendrogram") {
    const std::string out = testutil::temp_dir("cli_two");
    const auto two = testutil::write_temp("two_langs.tsv",
                                          "#dim=2\n"
                                          "aaa\tona\tverb\t-\t-\t1 0.2\n"
                                          "aaa\tkumi\tnoun\t5\t-\t0.4 1\n"
                                          "bbb\tona\tverb\t-\t-\t1 0.1\n"
                                          "bbb\tkumi\tnoun\t5\t-\t0.5 1\n");
    const auto langs = testutil::write_temp("two_langs_meta.tsv", "aaa\tA\tE\nbbb\tB\tS\n");
    REQUIRE(run_cli("phylo --embeddings " + two + " --languages " + langs + " --seed 5 --out " + out,
                    out + "/log") == 0);
    const auto newick = trim(testutil::read_file(out + "/tree.nwk"));
    CHECK(newick.find("(aaa:") == 0);
    CHECK(newick.back() == ';');
    // MDS and the zone test are skipped (n <= dims, no same-zone pair)
    const auto err = testutil::read_file(out + "/log.err");
    CHECK(err.find("skipping MDS") != std::string::npos);
    CHECK(err.find("skipping zone test") != std::string::npos);

    // the all-pairs matrix mode drives the same pipeline
    REQUIRE(run_cli("phylo --embeddings " + two + " --languages " + langs +
                        " --matrix-mode all-pairs --seed 5 --out " + out,
                    out + "/log2") == 0);
    CHECK(run_cli("phylo --embeddings " + two + " --languages " + langs +
                      " --matrix-mode bogus --seed 5 --out " + out,
                  out + "/log3") != 0);
}

TEST_CASE("config file values are used and flags override them") {
    const std::string out = testutil::temp_dir("cli_config");
    const auto conf = testutil::write_temp("run.conf",
                                           "embeddings=" + testutil::fixture("tiny_embeddings.tsv") +
                                               "\n"
                                               "min-languages=15\n"
                                               "out=" + out + "\n");
    REQUIRE(run_cli("discover --config " + conf, out + "/log") == 0);
    CHECK(read_candidates(out + "/candidates.tsv").empty()); // 15 filters everything

    REQUIRE(run_cli("discover --config " + conf + " --min-languages 5", out + "/log2") == 0);
    CHECK(!read_candidates(out + "/candidates.tsv").empty()); // flag wins
}

TEST_CASE("validate matches the numeral fixture end to end") {
    const std::string out = testutil::temp_dir("cli_numerals");
    REQUIRE(run_cli("validate --candidates " + testutil::fixture("numeral_candidates.tsv") +
                        " --blr3 " + testutil::fixture("reconstructions_numerals.tsv") +
                        " --asjp " + testutil::fixture("wordlist_basic.tsv") +
                        " --asjp-concepts " + testutil::fixture("concepts_basic.txt") + " --out " +
                        out,
                    out + "/log") == 0);
    const auto report = testutil::read_file(out + "/validation.tsv");
    for (const char* lemma : {"tatu", "kumi", "kenda", "tano", "saba", "nne", "nane", "mbili"}) {
        CHECK_MESSAGE(report.find(std::string(lemma) + "\t") != std::string::npos, lemma);
    }
    CHECK(report.find("sita\t11\t-\tnone\t-\tUnvalidated") != std::string::npos);
    CHECK(report.find("tisa\t7\t-\tnone\t-\tUnvalidated") != std::string::npos);
    // tiers are logged per candidate
    const auto err = testutil::read_file(out + "/log.err");
    CHECK(err.find("tatu -> blr3 exact") != std::string::npos);
    CHECK(err.find("saba -> blr3 edit-1") != std::string::npos);
}

TEST_CASE("validate leaves only wa unmatched among the annotated verbs") {
    const std::string out = testutil::temp_dir("cli_verbs");
    REQUIRE(run_cli("validate --candidates " + testutil::fixture("verb_candidates.tsv") +
                        " --blr3 " + testutil::fixture("reconstructions_verbs.tsv") + " --asjp " +
                        testutil::fixture("wordlist_basic.tsv") + " --asjp-concepts " +
                        testutil::fixture("concepts_basic.txt") + " --out " + out,
                    out + "/log") == 0);
    const auto report = testutil::read_file(out + "/validation.tsv");
    CHECK(report.find("wa\t14\t-\tnone\t-\tUnvalidated") != std::string::npos);
    for (const char* lemma : {"ona", "ima", "bona", "enda", "ba", "koma", "lala", "tuma"}) {
        CHECK_MESSAGE(report.find(std::string(lemma) + "\t") != std::string::npos, lemma);
    }
    const auto err = testutil::read_file(out + "/log.err");
    CHECK(err.find("8/12 validated") != std::string::npos);
}

TEST_CASE("filter writes verdicts and the passing subset") {
    const std::string out = testutil::temp_dir("cli_filter");
    REQUIRE(run_cli("filter --candidates " + testutil::fixture("top_noun_candidates.tsv") +
                        " --stoplist " + testutil::fixture("stoplist.txt") + " --proper-nouns " +
                        testutil::fixture("propn_lexicon.txt") + " --out " + out,
                    out + "/log") == 0);
    const auto verdicts = testutil::read_file(out + "/verdicts.tsv");
    CHECK(verdicts.find("ng'ombe\tpass") != std::string::npos);
    const auto passing = read_candidates(out + "/candidates_pass.tsv");
    CHECK(passing.size() == 11); // nothing in the fixture trips the filters
}

TEST_CASE("manifests echo the config and digest the inputs") {
    const std::string out = testutil::temp_dir("cli_manifest");
    REQUIRE(run_cli("simulate --seed 9 --n-roots 30 --n-languages 6 --tree-shape "
                    "\"(((l01:1,l02:1):1,l03:2):1,((l04:1,l05:1):1,l06:2):1);\" --out " +
                        out,
                    out + "/log") == 0);
    const auto manifest = testutil::read_file(out + "/manifest_simulate.json");
    CHECK(manifest.find("\"command\": \"simulate\"") != std::string::npos);
    CHECK(manifest.find("\"seed\": \"9\"") != std::string::npos);
    CHECK(manifest.find("embeddings.tsv") != std::string::npos);

    // the emitted corpus loads back cleanly
    const auto emb = load_embeddings(out + "/embeddings.tsv");
    CHECK(!emb.records.empty());
    const auto langs = load_language_meta(out + "/languages.tsv");
    CHECK(langs.size() == 6);
}

TEST_CASE("report collates the stage outputs") {
    const std::string out = testutil::temp_dir("cli_report");
    REQUIRE(run_cli("simulate --seed 13 --n-roots 60 --out " + out, out + "/log1") == 0);
    REQUIRE(run_cli("discover --embeddings " + out + "/embeddings.tsv --languages " + out +
                        "/languages.tsv --out " + out,
                    out + "/log2") == 0);
    REQUIRE(run_cli("phylo --embeddings " + out + "/embeddings.tsv --languages " + out +
                        "/languages.tsv --seed 13 --out " + out,
                    out + "/log3") == 0);
    REQUIRE(run_cli("report --out " + out, out + "/log4") == 0);
    const auto report = testutil::read_file(out + "/report.txt");
    CHECK(report.find("Cognate candidates") != std::string::npos);
    CHECK(report.find("dendrogram (newick)") != std::string::npos);
    CHECK(report.find("zone_test.tsv") != std::string::npos);
}
