#pragma once
// Core domain types shared across the pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bantulex {

using Vec = std::vector<double>;

enum class Pos { Noun, Verb, Other };

std::string pos_to_string(Pos p);
Pos pos_from_string(const std::string& s); // throws on unknown tag

// Guthrie zones used in this dataset form a closed set.
inline constexpr char kZones[] = {'C', 'E', 'G', 'H', 'J', 'N', 'S'};
bool is_valid_zone(char z);

struct LanguageMeta {
    std::string code;  // 3-letter identifier, unique within a dataset
    std::string name;
    char zone = '?';
};

// One (language, lemma, POS, noun class, vector) observation.
struct EmbeddingRecord {
    std::string language;
    std::string lemma;
    Pos pos = Pos::Other;
    std::optional<int> noun_class;   // 1..19, only meaningful when pos == Noun
    std::optional<std::string> gloss;
    Vec vector;
};

// A reference proto-form, kept verbatim as published (asterisk, hyphens,
// tone diacritics). Normalization happens at match time, never at load time.
struct ReconstructionEntry {
    std::string proto_form;
    std::optional<std::string> gloss;
};

// One basic-vocabulary wordlist item.
struct AsjpEntry {
    std::string language;
    std::string concept_name;
    std::string form;
};

} // namespace bantulex
