// bantulex: cross-lingual cognate discovery, filtering, reference
// validation, noun-class statistics, and phylogeny over per-language lemma
// embeddings.
//
// All commands are deterministic given their configuration and seed; every
// command writes a run manifest with config echo and input/output digests.
// Diagnostics go to stderr, data goes to files under --out.

#include "bantulex/corpus_io.hpp"
#include "bantulex/discovery.hpp"
#include "bantulex/filtering.hpp"
#include "bantulex/geometry.hpp"
#include "bantulex/manifest.hpp"
#include "bantulex/nounclass.hpp"
#include "bantulex/phylo.hpp"
#include "bantulex/synthfam.hpp"
#include "bantulex/text.hpp"
#include "bantulex/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace bantulex;

namespace {

struct Options {
    // paths
    std::string embeddings;
    std::string second_embeddings;
    std::string candidates;
    std::string blr3;
    std::string asjp;
    std::string asjp_concepts;
    std::string languages;
    std::string stoplist;
    std::string proper_nouns;
    std::string reference_tree;
    std::string out_dir = ".";
    // thresholds
    std::size_t min_languages = 5;
    double sim_threshold = 0.80;
    double mean_floor = 0.95;
    double stdev_ceiling = 0.02;
    double strong_threshold = 0.70;
    std::size_t min_len = 3;
    std::size_t min_members = 3;
    bool pairwise = false;
    std::string matrix_mode = "shared-lemma";
    std::size_t mds_dims = 2;
    std::size_t expected_dim = 0; // 0 = take the file's declared dimension
    // randomness
    int n_permutations = 10000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    // generator
    std::size_t n_roots = 200;
    std::size_t n_languages = 14;
    std::string tree_shape;
    double sound_change_rate = 0.1;
    std::size_t loanword_count = 10;
    std::size_t proper_noun_count = 5;
    std::size_t embedding_dim = 48;
    double embedding_noise = 0.05;
    double language_offset_scale = 0.8;
    double class_signal_scale = 0.5;
};

std::string out_path(const Options& opt, const std::string& name) {
    return (fs::path(opt.out_dir) / name).string();
}

void echo_config(RunManifest& m, const Options& o) {
    auto put = [&](const std::string& k, const std::string& v) {
        if (!v.empty()) m.config[k] = v;
    };
    put("embeddings", o.embeddings);
    put("second_embeddings", o.second_embeddings);
    put("candidates", o.candidates);
    put("blr3", o.blr3);
    put("asjp", o.asjp);
    put("asjp_concepts", o.asjp_concepts);
    put("languages", o.languages);
    put("stoplist", o.stoplist);
    put("proper_nouns", o.proper_nouns);
    put("reference_tree", o.reference_tree);
    put("out", o.out_dir);
    m.config["min_languages"] = std::to_string(o.min_languages);
    m.config["sim_threshold"] = format_double(o.sim_threshold);
    m.config["mean_floor"] = format_double(o.mean_floor);
    m.config["stdev_ceiling"] = format_double(o.stdev_ceiling);
    m.config["strong_threshold"] = format_double(o.strong_threshold);
    m.config["min_len"] = std::to_string(o.min_len);
    m.config["min_members"] = std::to_string(o.min_members);
    m.config["pairwise"] = o.pairwise ? "true" : "false";
    m.config["matrix_mode"] = o.matrix_mode;
    m.config["mds_dims"] = std::to_string(o.mds_dims);
    m.config["n_permutations"] = std::to_string(o.n_permutations);
    if (o.seed_given) m.config["seed"] = std::to_string(o.seed);
    m.config["n_roots"] = std::to_string(o.n_roots);
    m.config["n_languages"] = std::to_string(o.n_languages);
    put("tree_shape", o.tree_shape);
    m.config["sound_change_rate"] = format_double(o.sound_change_rate);
    m.config["loanword_count"] = std::to_string(o.loanword_count);
    m.config["proper_noun_count"] = std::to_string(o.proper_noun_count);
    m.config["embedding_dim"] = std::to_string(o.embedding_dim);
    m.config["embedding_noise"] = format_double(o.embedding_noise);
    m.config["language_offset_scale"] = format_double(o.language_offset_scale);
    m.config["class_signal_scale"] = format_double(o.class_signal_scale);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void require_seed(const Options& o) {
    require(o.seed_given, "--seed is mandatory for this command (no wall-clock seeding)");
}

void report_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

LoadedEmbeddings load_embeddings_checked(const Options& o) {
    require(!o.embeddings.empty(), "--embeddings is required");
    std::vector<LanguageMeta> known;
    if (!o.languages.empty()) known = load_language_meta(o.languages);
    std::optional<std::size_t> expected;
    if (o.expected_dim > 0) expected = o.expected_dim;
    auto loaded = load_embeddings(o.embeddings, expected, known);
    report_warnings(loaded.warnings);
    return loaded;
}

MatrixMode parse_matrix_mode(const std::string& s) {
    if (s == "shared-lemma") return MatrixMode::SharedLemma;
    if (s == "all-pairs") return MatrixMode::AllPairs;
    throw std::runtime_error("unknown matrix mode '" + s + "' (expected shared-lemma|all-pairs)");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------- commands

int cmd_ingest(const Options& o) {
    auto loaded = load_embeddings_checked(o);
    const std::string out_file = out_path(o, "ingested.tsv");
    write_embeddings(out_file, loaded.records, loaded.dimension);

    RunManifest m;
    m.command = "ingest";
    echo_config(m, o);
    m.add_input(o.embeddings);
    if (!o.languages.empty()) m.add_input(o.languages);
    m.add_output(out_file);
    m.counts["records"] = static_cast<std::int64_t>(loaded.records.size());
    m.counts["dimension"] = static_cast<std::int64_t>(loaded.dimension);
    m.counts["warnings"] = static_cast<std::int64_t>(loaded.warnings.size());
    m.write(out_path(o, "manifest_ingest.json"));

    std::cerr << "ingested " << loaded.records.size() << " records (dim " << loaded.dimension
              << ")\n";
    return 0;
}

int cmd_discover(const Options& o) {
    auto loaded = load_embeddings_checked(o);
    const CenteredSpace space = center_by_language(loaded.records);
    const std::size_t zero_vectors = count_zero_vectors(space);
    if (zero_vectors > 0) {
        std::cerr << "warning: " << zero_vectors
                  << " record(s) center to the zero vector and are left out of the neighbor graph\n";
    }

    auto surface = surface_shared_candidates(loaded.records, o.min_languages);
    auto neighbor = neighbor_cluster_candidates(space, o.sim_threshold, o.min_languages);
    auto merged = merge_candidates(surface, neighbor, loaded.records);
    compute_coherence(merged, space);

    std::size_t strong = 0;
    if (!o.second_embeddings.empty()) {
        auto second = load_embeddings(o.second_embeddings);
        report_warnings(second.warnings);
        strong = cross_source_agreement(merged, second.records, o.strong_threshold);
    }
    score_and_rank(merged);

    const std::string out_file = out_path(o, "candidates.tsv");
    write_candidates(out_file, merged);

    RunManifest m;
    m.command = "discover";
    echo_config(m, o);
    m.add_input(o.embeddings);
    if (!o.languages.empty()) m.add_input(o.languages);
    if (!o.second_embeddings.empty()) m.add_input(o.second_embeddings);
    m.add_output(out_file);
    m.counts["records"] = static_cast<std::int64_t>(loaded.records.size());
    m.counts["surface_candidates"] = static_cast<std::int64_t>(surface.size());
    m.counts["neighbor_candidates"] = static_cast<std::int64_t>(neighbor.size());
    m.counts["candidates"] = static_cast<std::int64_t>(merged.size());
    m.counts["zero_vector_records"] = static_cast<std::int64_t>(zero_vectors);
    if (!o.second_embeddings.empty()) {
        m.counts["strong"] = static_cast<std::int64_t>(strong);
    }
    m.write(out_path(o, "manifest_discover.json"));

    std::cerr << "discovered " << merged.size() << " candidates (" << surface.size()
              << " surface-shared, " << neighbor.size() << " neighbor clusters)\n";
    if (!o.second_embeddings.empty()) {
        std::cerr << strong << " candidates strong in the second source\n";
    }
    return 0;
}

int cmd_filter(const Options& o) {
    require(!o.candidates.empty(), "--candidates is required");
    auto cands = read_candidates(o.candidates);

    std::vector<EmbeddingRecord> records;
    if (!o.embeddings.empty()) {
        auto loaded = load_embeddings_checked(o);
        records = std::move(loaded.records);
    }
    std::set<std::string> stop, lexicon;
    if (!o.stoplist.empty()) stop = load_wordlist(o.stoplist);
    if (!o.proper_nouns.empty()) lexicon = load_wordlist(o.proper_nouns);

    const FilterThresholds thresholds{o.mean_floor, o.stdev_ceiling};
    auto verdicts = evaluate_filters(cands, lexicon, stop, thresholds, records);

    const std::string out_file = out_path(o, "verdicts.tsv");
    write_verdicts(out_file, verdicts);

    std::vector<CognateCandidate> passing;
    std::map<std::string, std::int64_t> tally;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        ++tally[verdict_to_string(verdicts[i].verdict)];
        if (verdicts[i].verdict == Verdict::Pass) passing.push_back(cands[i]);
    }
    const std::string pass_file = out_path(o, "candidates_pass.tsv");
    write_candidates(pass_file, passing);

    RunManifest m;
    m.command = "filter";
    echo_config(m, o);
    m.add_input(o.candidates);
    if (!o.embeddings.empty()) m.add_input(o.embeddings);
    if (!o.stoplist.empty()) m.add_input(o.stoplist);
    if (!o.proper_nouns.empty()) m.add_input(o.proper_nouns);
    m.add_output(out_file);
    m.add_output(pass_file);
    for (const auto& [k, v] : tally) m.counts[k] = v;
    m.counts["candidates"] = static_cast<std::int64_t>(cands.size());
    m.write(out_path(o, "manifest_filter.json"));

    std::cerr << "filtered " << cands.size() << " candidates:";
    for (const auto& [k, v] : tally) std::cerr << ' ' << k << '=' << v;
    std::cerr << '\n';
    return 0;
}

int cmd_validate(const Options& o) {
    require(!o.candidates.empty(), "--candidates is required");
    require(!o.blr3.empty(), "--blr3 is required");
    require(!o.asjp.empty(), "--asjp is required");
    auto cands = read_candidates(o.candidates);
    auto recon = load_reconstructions(o.blr3);
    report_warnings(recon.warnings);
    const auto concepts =
        o.asjp_concepts.empty() ? default_asjp_concepts() : load_concept_list(o.asjp_concepts);
    auto wordlist = load_asjp(o.asjp, concepts);
    report_warnings(wordlist.warnings);

    MatcherOptions mopt;
    mopt.min_len = o.min_len;

    std::vector<ValidationRow> rows;
    rows.reserve(cands.size());
    std::size_t validated = 0;
    for (const auto& c : cands) {
        ValidationRow row;
        row.root = c.root;
        row.language_count = c.language_count;
        row.blr3 = match_blr3(c.root, recon.entries, mopt);
        row.asjp = match_asjp(c.root, c.gloss, wordlist.entries, mopt);
        row.status = validation_status(row.blr3, row.asjp);
        if (row.status != ValidationStatus::Unvalidated) ++validated;
        std::cerr << row.root << " -> blr3 " << tier_to_string(row.blr3.tier)
                  << (row.blr3.matched() ? " (" + row.blr3.matched_form + ")" : "") << ", asjp "
                  << tier_to_string(row.asjp.tier)
                  << (row.asjp.matched() ? " (" + row.asjp.matched_concept + ")" : "") << " => "
                  << status_to_string(row.status) << '\n';
        rows.push_back(std::move(row));
    }
    const std::string out_file = out_path(o, "validation.tsv");
    write_validation_report(out_file, rows);

    char pct[32] = "0.0";
    if (!rows.empty()) {
        std::snprintf(pct, sizeof(pct), "%.1f",
                      100.0 * static_cast<double>(validated) / static_cast<double>(rows.size()));
    }
    std::cerr << validated << "/" << rows.size() << " validated (" << pct << "%)\n";

    RunManifest m;
    m.command = "validate";
    echo_config(m, o);
    m.add_input(o.candidates);
    m.add_input(o.blr3);
    m.add_input(o.asjp);
    if (!o.asjp_concepts.empty()) m.add_input(o.asjp_concepts);
    m.add_output(out_file);
    m.counts["candidates"] = static_cast<std::int64_t>(rows.size());
    m.counts["validated"] = static_cast<std::int64_t>(validated);
    m.write(out_path(o, "manifest_validate.json"));
    return 0;
}

int cmd_nounclass(const Options& o) {
    require_seed(o);
    auto loaded = load_embeddings_checked(o);
    const CenteredSpace space = center_by_language(loaded.records);

    ClassPairs pairs = o.pairwise
                           ? within_between_pairwise(space, o.min_members)
                           : within_between_similarity(class_centroids(space, o.min_members));
    const ClassTestResult test = class_similarity_test(pairs, o.n_permutations, o.seed);
    const auto prefixes = extract_class_prefixes(loaded.records, 1);

    const std::string report_file = out_path(o, "class_report.tsv");
    const std::string prefix_file = out_path(o, "prefixes.tsv");
    write_class_report(report_file, pairs, test);
    write_prefix_table(prefix_file, prefixes);

    RunManifest m;
    m.command = "nounclass";
    echo_config(m, o);
    m.add_input(o.embeddings);
    if (!o.languages.empty()) m.add_input(o.languages);
    m.add_output(report_file);
    m.add_output(prefix_file);
    m.counts["pairs"] = static_cast<std::int64_t>(pairs.values.size());
    m.counts["classes"] = static_cast<std::int64_t>(pairs.per_class_min_within.size());
    m.config["within_mean"] = format_double(test.within_mean);
    m.config["between_mean"] = format_double(test.between_mean);
    m.config["p_value"] = format_double(test.p_value);
    m.write(out_path(o, "manifest_nounclass.json"));

    std::cerr << "noun classes: within " << format_double(test.within_mean) << ", between "
              << format_double(test.between_mean) << ", p " << format_double(test.p_value) << " ("
              << test.n_permutations << " permutations, seed " << test.seed << ")\n";
    return 0;
}

int cmd_phylo(const Options& o) {
    require_seed(o);
    require(!o.languages.empty(), "--languages is required (zone assignments)");
    auto loaded = load_embeddings_checked(o);
    const auto langs = load_language_meta(o.languages);

    const auto sim = language_similarity_matrix(loaded.records, parse_matrix_mode(o.matrix_mode));
    const std::string sim_file = out_path(o, "language_similarity.tsv");
    write_similarity_matrix(sim_file, sim);

    const auto dist = distance_from_similarity(sim);
    const LanguageTree tree = ward_linkage(dist);
    const std::string tree_file = out_path(o, "tree.nwk");
    write_newick(tree_file, tree);

    RunManifest m;
    m.command = "phylo";
    echo_config(m, o);
    m.add_input(o.embeddings);
    m.add_input(o.languages);
    m.add_output(sim_file);
    m.add_output(tree_file);
    m.counts["languages"] = static_cast<std::int64_t>(sim.size());

    if (sim.size() > o.mds_dims) {
        const MdsProjection mds = classical_mds(dist, o.mds_dims);
        report_warnings(mds.warnings);
        const std::string mds_file = out_path(o, "mds.tsv");
        write_mds(mds_file, mds);
        m.add_output(mds_file);
        m.config["mds_stress"] = format_double(mds.stress);
    } else {
        std::cerr << "skipping MDS: need more than " << o.mds_dims << " languages\n";
    }

    std::map<std::string, char> zones;
    for (const auto& l : langs) zones[l.code] = l.zone;
    std::map<char, std::size_t> zone_sizes;
    for (const auto& label : sim.labels) {
        auto it = zones.find(label);
        require(it != zones.end(), "no zone for language '" + label + "' in " + o.languages);
        ++zone_sizes[it->second];
    }
    std::size_t same_zone_pairs = 0;
    for (const auto& [z, n] : zone_sizes) same_zone_pairs += n * (n - 1) / 2;
    if (zone_sizes.size() >= 2 && same_zone_pairs >= 1) {
        const ZoneTestResult zt = zone_permutation_test(sim, zones, o.n_permutations, o.seed);
        const std::string zone_file = out_path(o, "zone_test.tsv");
        write_zone_summary(zone_file, zt);
        m.add_output(zone_file);
        m.config["zone_p_value"] = format_double(zt.p_value);
        std::cerr << "zone test: same " << format_double(zt.same_zone_mean) << ", cross "
                  << format_double(zt.cross_zone_mean) << ", p " << format_double(zt.p_value)
                  << '\n';
    } else {
        std::cerr << "skipping zone test: needs >= 2 zones and >= 1 same-zone pair\n";
    }

    if (!o.reference_tree.empty()) {
        const TreeNode ref = parse_newick(trim(read_text_file(o.reference_tree)));
        const std::size_t rf = robinson_foulds(tree, ref);
        m.add_input(o.reference_tree);
        m.counts["robinson_foulds"] = static_cast<std::int64_t>(rf);
        std::cerr << "robinson-foulds distance to reference tree: " << rf << '\n';
    }

    m.write(out_path(o, "manifest_phylo.json"));
    return 0;
}

int cmd_simulate(const Options& o) {
    require_seed(o);
    GeneratorConfig cfg;
    cfg.seed = o.seed;
    cfg.n_roots = o.n_roots;
    cfg.n_languages = o.n_languages;
    cfg.sound_change_rate = o.sound_change_rate;
    cfg.loanword_count = o.loanword_count;
    cfg.proper_noun_count = o.proper_noun_count;
    cfg.embedding_dim = o.embedding_dim;
    cfg.embedding_noise = o.embedding_noise;
    cfg.language_offset_scale = o.language_offset_scale;
    cfg.class_signal_scale = o.class_signal_scale;
    if (!o.tree_shape.empty()) {
        cfg.tree_shape = fs::exists(o.tree_shape) ? trim(read_text_file(o.tree_shape))
                                                  : o.tree_shape;
    }

    const SyntheticFamily fam = generate(cfg);
    const EmbeddedFamily primary = embed(fam, cfg, 0);
    const EmbeddedFamily second = embed(fam, cfg, 1);

    const std::string emb_file = out_path(o, "embeddings.tsv");
    const std::string emb2_file = out_path(o, "embeddings_second.tsv");
    const std::string truth_file = out_path(o, "truth.tsv");
    const std::string tree_file = out_path(o, "generator_tree.nwk");
    const std::string lang_file = out_path(o, "languages.tsv");
    write_embeddings(emb_file, primary.records, primary.dimension);
    write_embeddings(emb2_file, second.records, second.dimension);
    write_truth(truth_file, fam);
    {
        std::ofstream tout(tree_file, std::ios::binary);
        require(static_cast<bool>(tout), "cannot write file: " + tree_file);
        tout << fam.tree_newick << '\n';
    }
    write_language_meta(lang_file, fam.languages);

    RunManifest m;
    m.command = "simulate";
    echo_config(m, o);
    for (const auto& f : {emb_file, emb2_file, truth_file, tree_file, lang_file}) {
        m.add_output(f);
    }
    m.counts["proto_roots"] = static_cast<std::int64_t>(fam.proto_lexicon.size());
    m.counts["languages"] = static_cast<std::int64_t>(fam.languages.size());
    m.counts["records"] = static_cast<std::int64_t>(primary.records.size());
    m.counts["loanwords"] = static_cast<std::int64_t>(o.loanword_count);
    m.counts["proper_nouns"] = static_cast<std::int64_t>(o.proper_noun_count);
    m.write(out_path(o, "manifest_simulate.json"));

    std::cerr << "simulated " << fam.languages.size() << " languages, "
              << primary.records.size() << " records\n";
    return 0;
}

// Joins the stage outputs in --out into one human-readable summary.
int cmd_report(const Options& o) {
    std::ostringstream rep;
    rep << "bantulex analysis report\n";
    rep << "========================\n\n";

    std::map<std::string, std::string> verdict_of;
    if (fs::exists(out_path(o, "verdicts.tsv"))) {
        std::ifstream in(out_path(o, "verdicts.tsv"));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto f = split(line, '\t');
            if (f.size() >= 2) verdict_of[f[0]] = f[1];
        }
    }
    std::map<std::string, std::pair<std::string, std::string>> validation_of; // root -> (blr3, status)
    std::map<std::string, std::string> asjp_of;
    if (fs::exists(out_path(o, "validation.tsv"))) {
        std::ifstream in(out_path(o, "validation.tsv"));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            const auto f = split(line, '\t');
            if (f.size() >= 6) {
                validation_of[f[0]] = {f[2], f[5]};
                asjp_of[f[0]] = f[4];
            }
        }
    }

    if (fs::exists(out_path(o, "candidates.tsv"))) {
        const auto cands = read_candidates(out_path(o, "candidates.tsv"));
        rep << "Cognate candidates (" << cands.size() << " total; top 25 by breadth)\n";
        rep << "  lemma            pos    langs  mean_sim  blr3          asjp      status        verdict\n";
        std::size_t shown = 0;
        for (const auto& c : cands) {
            if (shown++ >= 25) break;
            char mean[16] = "-";
            if (c.coherence) std::snprintf(mean, sizeof(mean), "%.3f", c.coherence->mean_sim);
            const auto vit = validation_of.find(c.root);
            const auto ait = asjp_of.find(c.root);
            const auto fit = verdict_of.find(c.root);
            char buf[256];
            std::snprintf(buf, sizeof(buf), "  %-16s %-6s %5zu  %8s  %-12s  %-8s  %-12s  %s\n",
                          c.root.c_str(), pos_to_string(c.pos).c_str(), c.language_count, mean,
                          vit == validation_of.end() ? "-" : vit->second.first.c_str(),
                          ait == asjp_of.end() ? "-" : ait->second.c_str(),
                          vit == validation_of.end() ? "-" : vit->second.second.c_str(),
                          fit == verdict_of.end() ? "-" : fit->second.c_str());
            rep << buf;
        }
        rep << '\n';
    }

    for (const char* name : {"class_report.tsv", "prefixes.tsv", "zone_test.tsv"}) {
        if (!fs::exists(out_path(o, name))) continue;
        rep << name << "\n";
        std::ifstream in(out_path(o, name));
        std::string line;
        while (std::getline(in, line)) rep << "  " << line << '\n';
        rep << '\n';
    }
    if (fs::exists(out_path(o, "tree.nwk"))) {
        rep << "dendrogram (newick)\n  " << trim(read_text_file(out_path(o, "tree.nwk")))
            << "\n\n";
    }

    const std::string report_file = out_path(o, "report.txt");
    std::ofstream out(report_file, std::ios::binary);
    require(static_cast<bool>(out), "cannot write file: " + report_file);
    out << rep.str();
    out.close();

    RunManifest m;
    m.command = "report";
    echo_config(m, o);
    m.add_output(report_file);
    m.write(out_path(o, "manifest_report.json"));
    std::cerr << "wrote " << report_file << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"cross-lingual cognate discovery and phylogeny pipeline"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value configuration file; flags override it");

    app.add_option("--embeddings", o.embeddings, "embedding TSV (#dim=<d> header)");
    app.add_option("--second-embeddings", o.second_embeddings,
                   "independent second embedding source");
    app.add_option("--candidates", o.candidates, "candidate TSV from discover");
    app.add_option("--blr3", o.blr3, "reconstruction TSV (proto_form<TAB>gloss)");
    app.add_option("--asjp", o.asjp, "basic-vocabulary TSV (language<TAB>concept<TAB>form)");
    app.add_option("--asjp-concepts", o.asjp_concepts,
                   "concept list file overriding the built-in 40-item list");
    app.add_option("--languages", o.languages, "language metadata TSV (code<TAB>name<TAB>zone)");
    app.add_option("--stoplist", o.stoplist, "domain stoplist, one entry per line");
    app.add_option("--proper-nouns", o.proper_nouns, "proper-noun lexicon, one entry per line");
    app.add_option("--reference-tree", o.reference_tree, "reference Newick tree");
    auto* out_opt = app.add_option("--out", o.out_dir, "output directory");
    out_opt->envname("BANTULEX_OUT");

    app.add_option("--min-languages", o.min_languages, "minimum languages per candidate");
    app.add_option("--sim-threshold", o.sim_threshold, "neighbor edge cosine threshold in (0,1)");
    app.add_option("--mean-floor", o.mean_floor, "loanword filter: mean similarity floor");
    app.add_option("--stdev-ceiling", o.stdev_ceiling, "loanword filter: stdev ceiling");
    app.add_option("--strong-threshold", o.strong_threshold,
                   "second-source mean similarity for a strong candidate");
    app.add_option("--min-len", o.min_len, "matcher: minimum length for non-exact tiers");
    app.add_option("--min-members", o.min_members, "noun class: minimum members per centroid");
    app.add_flag("--pairwise", o.pairwise, "noun class: compare raw member pairs, not centroids");
    app.add_option("--matrix-mode", o.matrix_mode, "language matrix: shared-lemma|all-pairs");
    app.add_option("--mds-dims", o.mds_dims, "MDS output dimensions");
    app.add_option("--expected-dim", o.expected_dim, "require this embedding dimension");
    app.add_option("--n-permutations", o.n_permutations, "permutation test iterations");
    auto* seed_opt = app.add_option("--seed", o.seed, "seed for all randomized stages");

    app.add_option("--n-roots", o.n_roots, "generator: proto lexicon size");
    app.add_option("--n-languages", o.n_languages, "generator: daughter language count");
    app.add_option("--tree-shape", o.tree_shape, "generator: Newick string or file");
    app.add_option("--sound-change-rate", o.sound_change_rate,
                   "generator: per-segment per-branch mutation rate");
    app.add_option("--loanword-count", o.loanword_count, "generator: planted loanwords");
    app.add_option("--proper-noun-count", o.proper_noun_count, "generator: planted proper nouns");
    app.add_option("--embedding-dim", o.embedding_dim, "generator: embedding dimension (>= 8)");
    app.add_option("--embedding-noise", o.embedding_noise, "generator: per-record noise norm");
    app.add_option("--language-offset-scale", o.language_offset_scale,
                   "generator: per-language offset norm");
    app.add_option("--class-signal-scale", o.class_signal_scale,
                   "generator: planted noun-class separation");

    struct Command {
        const char* name;
        const char* description;
        int (*run)(const Options&);
    };
    static const Command kCommands[] = {
        {"ingest", "load, validate and re-emit an embedding file", cmd_ingest},
        {"discover", "extract and rank cognate candidates", cmd_discover},
        {"filter", "annotate candidates with artifact verdicts", cmd_filter},
        {"validate", "match candidates against reference resources", cmd_validate},
        {"nounclass", "noun-class similarity and permutation test", cmd_nounclass},
        {"phylo", "dendrogram, MDS, zone test, reference comparison", cmd_phylo},
        {"simulate", "generate a synthetic family with ground truth", cmd_simulate},
        {"report", "collate stage outputs into a readable report", cmd_report},
    };
    for (const auto& c : kCommands) {
        app.add_subcommand(c.name, c.description)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    o.seed_given = seed_opt->count() > 0; // config-file values count too

    try {
        fs::create_directories(o.out_dir);
        for (const auto& c : kCommands) {
            if (app.got_subcommand(c.name)) return c.run(o);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no command\n";
    return 1;
}
