#include "bantulex/synthfam.hpp"

#include "bantulex/corpus_io.hpp"
#include "bantulex/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bantulex {

std::string origin_to_string(Origin o) {
    switch (o) {
        case Origin::Inherited: return "inherited";
        case Origin::Loanword: return "loanword";
        case Origin::ProperNoun: return "proper-noun";
    }
    throw std::logic_error("unreachable origin");
}

const std::string& default_tree_shape() {
    // Topology follows the reference classification; branch lengths vary the
    // way real family trees do, which also keeps the pairwise distances away
    // from exact ties.
    static const std::string shape =
        "((((kik:0.5,kam:0.6):0.9,mer:1.3):1.1,((kin:0.4,run:0.5):1.0,lug:1.2):0.9):1.5,"
        "(((zul:0.5,xho:0.6):0.8,(nso:0.7,sna:0.8):0.9):1.2,"
        "((kon:0.4,lin:0.5):1.1,(swh:0.9,nya:1.0):0.7):1.0):1.3);";
    return shape;
}

namespace {

constexpr const char* kConsonants = "bcdfgjklmnpstvwyz"; // 17
constexpr const char* kVowels = "aeiou";
constexpr double kNgramScale = 0.5;  // weight of the surface-form features
constexpr double kAnchorScale = 1.0; // weight of the meaning anchor

// Seed streams; combined with config.seed via derive_seed.
enum : std::uint64_t {
    kStreamRoots = 1,
    kStreamPos = 2,
    kStreamEdges = 3,
    kStreamLoans = 4,
    kStreamProperNouns = 5,
    kStreamAnchors = 10,
    kStreamClassAnchors = 11,
    kStreamNgrams = 12,
    kStreamNoise = 13,
    kStreamOffsets = 14,
};

bool is_consonant_char(char c) {
    for (const char* p = kConsonants; *p; ++p) {
        if (*p == c) return true;
    }
    return false;
}

char mutate_vowel(char v, Rng& rng) {
    // Shift to a different vowel, seeded.
    char out = v;
    while (out == v) out = kVowels[rng.next_below(5)];
    return out;
}

char mutate_consonant(char c) {
    // Lenition-style map within the inventory.
    switch (c) {
        case 'p': return 'b';
        case 'b': return 'w';
        case 't': return 'd';
        case 'd': return 'l';
        case 'k': return 'g';
        case 'g': return 'y';
        case 'c': return 'j';
        case 'j': return 'y';
        case 's': return 'z';
        case 'z': return 's';
        case 'f': return 'v';
        case 'v': return 'w';
        case 'l': return 'd';
        case 'm': return 'n';
        case 'n': return 'm';
        case 'w': return 'y';
        case 'y': return 'w';
        default: return c;
    }
}

std::string mutate_form(const std::string& form, double rate, Rng& rng) {
    std::string out = form;
    for (char& ch : out) {
        if (rng.next_double() >= rate) continue;
        if (is_consonant_char(ch)) {
            ch = mutate_consonant(ch);
        } else {
            ch = mutate_vowel(ch, rng);
        }
    }
    return out;
}

std::string sample_root(Rng& rng, std::set<std::string>& used) {
    for (;;) {
        std::string r;
        r += kConsonants[rng.next_below(17)];
        r += kVowels[rng.next_below(5)];
        if (rng.next_double() < 0.85) r += kConsonants[rng.next_below(17)];
        r += kVowels[rng.next_below(5)];
        if (used.insert(r).second) return r;
    }
}

const std::map<int, std::string>& proto_class_prefixes() {
    static const std::map<int, std::string> p = {
        {1, "mu"}, {2, "ba"}, {3, "mu"}, {5, "li"},
        {7, "ki"}, {9, "n"},  {11, "lu"}, {14, "bu"}};
    return p;
}

struct EvolvedWord {
    std::string stem;
    std::string prefix; // empty until a prefix-substitution event fires
};

struct LangState {
    std::string code;
    std::vector<EvolvedWord> words;            // parallel to proto_lexicon
    std::map<int, std::string> class_prefixes; // branch-local reflexes
};

// Depth-1..2 clades of the tree, used to assign zones to non-default trees.
std::vector<std::vector<std::string>> zone_groups(const TreeNode& root, std::size_t max_groups) {
    struct Group {
        const TreeNode* node;
        std::size_t leaf_count;
    };
    auto count = [](const TreeNode& n) { return tree_leaves(n).size(); };
    std::vector<Group> groups;
    if (root.is_leaf()) {
        groups.push_back({&root, 1});
    } else {
        for (const auto& c : root.children) groups.push_back({&c, count(c)});
    }
    while (groups.size() < max_groups) {
        std::size_t pick = groups.size();
        std::size_t best = 1;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].leaf_count > best && !groups[i].node->is_leaf()) {
                best = groups[i].leaf_count;
                pick = i;
            }
        }
        if (pick == groups.size()) break; // nothing splittable
        Group g = groups[pick];
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(pick));
        for (const auto& c : g.node->children) {
            groups.insert(groups.begin() + static_cast<std::ptrdiff_t>(pick++), {&c, count(c)});
        }
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& g : groups) out.push_back(tree_leaves(*g.node));
    return out;
}

std::vector<LanguageMeta> assign_languages(const TreeNode& tree, const std::string& shape) {
    const auto leaves = tree_leaves(tree);
    std::vector<LanguageMeta> out;
    if (shape == default_tree_shape()) {
        static const std::map<std::string, std::pair<std::string, char>> kKnown = {
            {"kam", {"Kamba", 'E'}},      {"kik", {"Kikuyu", 'E'}},
            {"mer", {"Kimeru", 'E'}},     {"kin", {"Kinyarwanda", 'J'}},
            {"run", {"Kirundi", 'J'}},    {"lug", {"Luganda", 'J'}},
            {"zul", {"Zulu", 'S'}},       {"xho", {"Xhosa", 'S'}},
            {"sna", {"Shona", 'S'}},      {"nso", {"Northern Sotho", 'S'}},
            {"lin", {"Lingala", 'C'}},    {"kon", {"Kongo", 'H'}},
            {"swh", {"Swahili", 'G'}},    {"nya", {"Chichewa", 'N'}}};
        for (const auto& code : leaves) {
            const auto& [name, zone] = kKnown.at(code);
            out.push_back({code, name, zone});
        }
        return out;
    }
    for (const auto& code : leaves) {
        if (code.size() != 3) {
            throw std::invalid_argument("generator: leaf '" + code +
                                        "' is not a 3-letter language code");
        }
    }
    const auto groups = zone_groups(tree, std::min<std::size_t>(4, leaves.size()));
    std::map<std::string, char> zone_of;
    std::size_t zi = 0;
    for (const auto& g : groups) {
        const char z = kZones[zi % std::size(kZones)];
        ++zi;
        for (const auto& code : g) zone_of[code] = z;
    }
    for (const auto& code : leaves) {
        out.push_back({code, "synthetic " + code, zone_of.at(code)});
    }
    return out;
}

std::string auto_tree(std::size_t n) {
    // Balanced binary topology over l01..lNN with unit branch lengths.
    std::vector<std::string> codes;
    for (std::size_t i = 0; i < n; ++i) {
        std::string num = std::to_string(i + 1);
        while (num.size() < 2) num = "0" + num;
        codes.push_back("l" + num);
    }
    auto build = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::string {
        if (hi - lo == 1) return codes[lo];
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        return "(" + self(self, lo, mid) + ":1," + self(self, mid, hi) + ":1)";
    };
    return build(build, 0, n) + ";";
}

} // namespace

SyntheticFamily generate(const GeneratorConfig& config) {
    if (config.embedding_dim < 8) {
        throw std::invalid_argument("generator: embedding_dim must be >= 8");
    }
    if (config.sound_change_rate < 0.0 || config.sound_change_rate > 1.0) {
        throw std::invalid_argument("generator: sound_change_rate must lie in [0, 1]");
    }
    if (config.n_roots == 0) throw std::invalid_argument("generator: n_roots must be positive");
    if (config.n_languages < 2 || config.n_languages > 99) {
        throw std::invalid_argument("generator: n_languages must lie in [2, 99]");
    }

    SyntheticFamily fam;
    const std::string shape = !config.tree_shape.empty() ? config.tree_shape
                              : config.n_languages == 14 ? default_tree_shape()
                                                         : auto_tree(config.n_languages);
    fam.tree = parse_newick(shape);
    fam.tree_newick = newick_of(fam.tree);
    const auto leaves = tree_leaves(fam.tree);
    if (leaves.size() != config.n_languages) {
        throw std::invalid_argument("generator: tree has " + std::to_string(leaves.size()) +
                                    " leaves but n_languages is " +
                                    std::to_string(config.n_languages));
    }
    fam.languages = assign_languages(fam.tree, shape);

    // Proto lexicon. Classes cycle through the productive set so every class
    // carries the same number of meanings: equal cell sizes keep the
    // permutation null exchangeable when labels are shuffled.
    Rng root_rng(derive_seed(config.seed, kStreamRoots));
    Rng pos_rng(derive_seed(config.seed, kStreamPos));
    std::set<std::string> used_roots;
    static const int kProductiveClasses[] = {1, 2, 3, 5, 7, 9, 11, 14};
    std::size_t class_cursor = 0;
    for (std::size_t m = 0; m < config.n_roots; ++m) {
        ProtoRoot pr;
        pr.root = sample_root(root_rng, used_roots);
        pr.meaning_id = m;
        if (pos_rng.next_double() < 0.55) {
            pr.pos = Pos::Noun;
            pr.noun_class = kProductiveClasses[class_cursor++ % 8];
        } else {
            pr.pos = Pos::Verb;
        }
        fam.proto_lexicon.push_back(std::move(pr));
    }

    // Evolve along the tree. Each edge gets its own seeded rng stream so the
    // traversal order cannot leak into the result.
    std::size_t edge_counter = 0;
    std::vector<LangState> leaf_states;
    auto evolve = [&](auto&& self, const TreeNode& node, const LangState& incoming) -> void {
        LangState state = incoming;
        if (&node != &fam.tree) { // apply this edge's changes
            const double len = node.length.value_or(1.0);
            const double rate = std::clamp(config.sound_change_rate * len, 0.0, 0.95);
            Rng rng(derive_seed(config.seed, derive_seed(kStreamEdges, edge_counter++)));
            for (auto& [cls, prefix] : state.class_prefixes) {
                prefix = mutate_form(prefix, rate, rng);
            }
            for (std::size_t m = 0; m < state.words.size(); ++m) {
                auto& w = state.words[m];
                w.stem = mutate_form(w.stem, rate, rng);
                // Prefix substitution: the word adopts (or re-adapts to) the
                // branch-local class prefix.
                const auto& pr = fam.proto_lexicon[m];
                if (pr.pos == Pos::Noun && pr.noun_class && rng.next_double() < rate) {
                    w.prefix = state.class_prefixes.at(*pr.noun_class);
                }
            }
        }
        if (node.is_leaf()) {
            state.code = node.name;
            leaf_states.push_back(std::move(state));
            return;
        }
        for (const auto& child : node.children) self(self, child, state);
    };

    LangState proto_state;
    proto_state.class_prefixes = proto_class_prefixes();
    proto_state.words.reserve(config.n_roots);
    for (const auto& pr : fam.proto_lexicon) proto_state.words.push_back({pr.root, ""});
    evolve(evolve, fam.tree, proto_state);

    // Assemble daughter lexicons; within-language surface collisions keep the
    // first entry so the ground truth matches the loadable records exactly.
    for (const auto& st : leaf_states) {
        auto& lex = fam.daughter_lexicons[st.code];
        std::set<std::pair<std::string, Pos>> seen;
        for (std::size_t m = 0; m < st.words.size(); ++m) {
            const auto& pr = fam.proto_lexicon[m];
            DaughterForm f;
            f.surface = st.words[m].prefix + st.words[m].stem;
            f.meaning_id = m;
            f.pos = pr.pos;
            f.noun_class = pr.noun_class;
            f.origin = Origin::Inherited;
            if (!seen.insert({f.surface, f.pos}).second) continue;
            fam.truth[m].insert({st.code, f.surface});
            lex.push_back(std::move(f));
        }
    }

    // Any same-surface entry counts as a clash regardless of POS: discovery
    // groups case-folded surfaces, so a planted form reusing an inherited
    // string would blur the planted signature.
    const auto in_language = [&](const std::string& code, const std::string& surface, Pos) {
        for (const auto& f : fam.daughter_lexicons.at(code)) {
            if (f.surface == surface) return true;
        }
        return false;
    };

    // Planted artifacts: identical surfaces across a random >=5-language
    // subset, appended after evolution.
    auto inject = [&](std::size_t count, Origin origin, std::uint64_t stream, Pos pos) {
        Rng rng(derive_seed(config.seed, stream));
        std::set<std::string> fresh;
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t min_recipients = std::min<std::size_t>(5, leaves.size());
            const std::size_t n_recipients =
                min_recipients + rng.next_below(leaves.size() - min_recipients + 1);
            std::vector<std::string> order = leaves;
            rng.shuffle(order);
            order.resize(n_recipients);
            std::sort(order.begin(), order.end());

            // The planted surface must be fresh everywhere: a collision with
            // an inherited homograph in any language would blur the ground
            // truth.
            std::string surface;
            for (;;) {
                std::set<std::string> scratch = used_roots;
                surface = sample_root(rng, scratch);
                if (fresh.count(surface)) continue;
                bool clash = false;
                for (const auto& code : leaves) {
                    if (in_language(code, surface, pos)) {
                        clash = true;
                        break;
                    }
                }
                if (!clash) break;
            }
            fresh.insert(surface);
            if (origin == Origin::ProperNoun) surface[0] = static_cast<char>(surface[0] - 32);

            // Meaning ids continue past the proto range: loans first, then
            // proper nouns.
            const std::size_t mid = origin == Origin::Loanword
                                        ? config.n_roots + k
                                        : config.n_roots + config.loanword_count + k;
            for (const auto& code : order) {
                DaughterForm f;
                f.surface = surface;
                f.meaning_id = mid;
                f.pos = pos;
                f.origin = origin;
                fam.daughter_lexicons[code].push_back(std::move(f));
            }
        }
    };
    inject(config.loanword_count, Origin::Loanword, kStreamLoans, Pos::Noun);
    inject(config.proper_noun_count, Origin::ProperNoun, kStreamProperNouns, Pos::Other);

    return fam;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Vec random_unit(Rng& rng, std::size_t dim) {
    Vec v(dim);
    double n2 = 0.0;
    for (auto& x : v) {
        x = rng.next_normal();
        n2 += x * x;
    }
    const double n = std::sqrt(n2);
    if (n > 0.0) {
        for (auto& x : v) x /= n;
    }
    return v;
}

void add_scaled(Vec& acc, const Vec& v, double s) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * v[i];
}

// Character n-gram feature vector: boundary-marked bigrams and trigrams,
// each hashed to a stable pseudo-random unit direction, summed and
// normalized. Identical surfaces give identical features; one edit moves the
// vector a little.
Vec ngram_features(const std::string& surface, std::uint64_t ngram_seed, std::size_t dim) {
    const std::string padded = "^" + surface + "$";
    Vec acc(dim, 0.0);
    for (std::size_t len = 2; len <= 3; ++len) {
        if (padded.size() < len) continue;
        for (std::size_t i = 0; i + len <= padded.size(); ++i) {
            Rng rng(derive_seed(ngram_seed, fnv1a(padded.substr(i, len))));
            Vec dir = random_unit(rng, dim);
            add_scaled(acc, dir, 1.0);
        }
    }
    double n2 = 0.0;
    for (double x : acc) n2 += x * x;
    if (n2 > 0.0) {
        const double n = std::sqrt(n2);
        for (auto& x : acc) x /= n;
    }
    return acc;
}

} // namespace

EmbeddedFamily embed(const SyntheticFamily& family, const GeneratorConfig& config,
                     std::uint64_t source_id) {
    EmbeddedFamily out;
    out.dimension = config.embedding_dim;
    const std::size_t dim = config.embedding_dim;

    const std::uint64_t anchor_seed = derive_seed(config.seed, kStreamAnchors + 100 * source_id);
    const std::uint64_t class_seed =
        derive_seed(config.seed, kStreamClassAnchors + 100 * source_id);
    const std::uint64_t ngram_seed = derive_seed(config.seed, kStreamNgrams + 100 * source_id);
    const std::uint64_t noise_seed = derive_seed(config.seed, kStreamNoise + 100 * source_id);
    // Offsets are a property of the languages, not of the encoder: both
    // sources share them.
    const std::uint64_t offset_seed = derive_seed(config.seed, kStreamOffsets);

    std::map<std::size_t, Vec> anchors;
    auto anchor_of = [&](std::size_t meaning) -> const Vec& {
        auto it = anchors.find(meaning);
        if (it == anchors.end()) {
            Rng rng(derive_seed(anchor_seed, meaning));
            it = anchors.emplace(meaning, random_unit(rng, dim)).first;
        }
        return it->second;
    };
    std::map<int, Vec> class_anchors;
    auto class_anchor_of = [&](int cls) -> const Vec& {
        auto it = class_anchors.find(cls);
        if (it == class_anchors.end()) {
            Rng rng(derive_seed(class_seed, static_cast<std::uint64_t>(cls)));
            it = class_anchors.emplace(cls, random_unit(rng, dim)).first;
        }
        return it->second;
    };

    // Language offsets: a random walk down the generating tree, normalized to
    // the configured scale, so related languages share direction.
    std::map<std::string, Vec> offsets;
    std::size_t edge_counter = 0;
    auto walk = [&](auto&& self, const TreeNode& node, Vec acc) -> void {
        if (&node != &family.tree) {
            const double len = node.length.value_or(1.0);
            Rng rng(derive_seed(offset_seed, edge_counter++));
            Vec step = random_unit(rng, dim);
            add_scaled(acc, step, std::sqrt(std::max(len, 0.0)));
        }
        if (node.is_leaf()) {
            double n2 = 0.0;
            for (double x : acc) n2 += x * x;
            if (n2 > 0.0 && config.language_offset_scale > 0.0) {
                const double s = config.language_offset_scale / std::sqrt(n2);
                for (auto& x : acc) x *= s;
            } else {
                acc.assign(dim, 0.0);
            }
            offsets[node.name] = std::move(acc);
            return;
        }
        for (const auto& child : node.children) self(self, child, acc);
    };
    walk(walk, family.tree, Vec(dim, 0.0));

    for (std::size_t li = 0; li < family.languages.size(); ++li) {
        const auto& lang = family.languages[li];
        const auto& lex = family.daughter_lexicons.at(lang.code);
        const Vec& offset = offsets.at(lang.code);
        for (std::size_t wi = 0; wi < lex.size(); ++wi) {
            const auto& f = lex[wi];
            Vec v(dim, 0.0);
            add_scaled(v, anchor_of(f.meaning_id), kAnchorScale);
            add_scaled(v, ngram_features(f.surface, ngram_seed, dim), kNgramScale);
            if (f.noun_class) {
                add_scaled(v, class_anchor_of(*f.noun_class), config.class_signal_scale);
            }
            add_scaled(v, offset, 1.0);
            if (config.embedding_noise > 0.0) {
                Rng rng(derive_seed(noise_seed, li * 1000003ULL + wi));
                add_scaled(v, random_unit(rng, dim), config.embedding_noise);
            }

            EmbeddingRecord rec;
            rec.language = lang.code;
            rec.lemma = f.surface;
            rec.pos = f.pos;
            rec.noun_class = f.noun_class;
            rec.gloss = f.origin == Origin::ProperNoun ? "propn" : "g" + std::to_string(f.meaning_id);
            rec.vector = std::move(v);
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

void write_truth(const std::string& path, const SyntheticFamily& family) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "meaning_id\tlanguage\tsurface_form\torigin\n";
    for (const auto& lang : family.languages) {
        const auto& lex = family.daughter_lexicons.at(lang.code);
        for (const auto& f : lex) {
            out << f.meaning_id << '\t' << lang.code << '\t' << f.surface << '\t'
                << origin_to_string(f.origin) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
