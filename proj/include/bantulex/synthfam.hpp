#pragma once
// Synthetic-family oracle: generates a proto-lexicon, evolves it along a
// known tree with seeded sound changes, plants loanwords and proper nouns,
// and emits deterministic embeddings with full ground truth. Every pipeline
// stage can be tested against what was planted.
//
// Construction notes:
//   - embeddings are built, not learned: meaning anchor + character-n-gram
//     features + a per-language offset + noise. The offset direction follows
//     a random walk down the generating tree, so related languages point in
//     related directions and language centering has a measurable job;
//   - loanwords are injected with identical surface forms into a >=5
//     language subset, realizing the uniformly-high-similarity signature by
//     construction;
//   - everything derives from GeneratorConfig::seed; generate and embed are
//     reproducible byte-for-byte.

#include "bantulex/phylo.hpp"
#include "bantulex/types.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bantulex {

struct GeneratorConfig {
    std::uint64_t seed = 42;
    std::size_t n_roots = 200;
    std::size_t n_languages = 14;
    std::string tree_shape;            // Newick; empty selects the default tree
    double sound_change_rate = 0.1;    // per segment per branch
    std::size_t loanword_count = 10;
    std::size_t proper_noun_count = 5;
    std::size_t embedding_dim = 48;    // >= 8
    double embedding_noise = 0.05;     // norm of the per-record noise vector
    double language_offset_scale = 0.8;
    double class_signal_scale = 0.5;   // planted noun-class separation
};

enum class Origin { Inherited, Loanword, ProperNoun };
std::string origin_to_string(Origin o);

struct ProtoRoot {
    std::string root; // CV(C)V over the fixed phoneme inventory
    std::size_t meaning_id = 0;
    Pos pos = Pos::Other;
    std::optional<int> noun_class;
};

struct DaughterForm {
    std::string surface;
    std::size_t meaning_id = 0;
    Pos pos = Pos::Other;
    std::optional<int> noun_class;
    Origin origin = Origin::Inherited;
};

struct SyntheticFamily {
    std::vector<ProtoRoot> proto_lexicon;
    TreeNode tree; // generating tree; leaves carry the language codes
    std::string tree_newick;
    std::vector<LanguageMeta> languages; // leaf order, zones assigned
    std::map<std::string, std::vector<DaughterForm>> daughter_lexicons;
    // meaning_id -> the (language, surface) pairs that are true cognates;
    // covers exactly the inherited forms.
    std::map<std::size_t, std::set<std::pair<std::string, std::string>>> truth;
};

// The 14-language default tree (ultrametric, fully resolved) and its zone
// assignment.
const std::string& default_tree_shape();

SyntheticFamily generate(const GeneratorConfig& config);

// Deterministic embeddings for one source. source_id 0 is the primary
// encoder; source_id 1 draws independent anchors and noise and stands in for
// a second, independent model.
struct EmbeddedFamily {
    std::vector<EmbeddingRecord> records;
    std::size_t dimension = 0;
};

EmbeddedFamily embed(const SyntheticFamily& family, const GeneratorConfig& config,
                     std::uint64_t source_id = 0);

// Ground-truth TSV: meaning_id, language, surface_form, origin.
void write_truth(const std::string& path, const SyntheticFamily& family);

} // namespace bantulex
