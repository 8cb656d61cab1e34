#include "bantulex/corpus_io.hpp"

#include "bantulex/text.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <tuple>

namespace bantulex {

std::string pos_to_string(Pos p) {
    switch (p) {
        case Pos::Noun: return "noun";
        case Pos::Verb: return "verb";
        case Pos::Other: return "other";
    }
    throw std::logic_error("unreachable pos");
}

Pos pos_from_string(const std::string& s) {
    if (s == "noun") return Pos::Noun;
    if (s == "verb") return Pos::Verb;
    if (s == "other") return Pos::Other;
    throw std::runtime_error("unknown pos tag '" + s + "' (expected noun|verb|other)");
}

bool is_valid_zone(char z) {
    for (char k : kZones) {
        if (k == z) return true;
    }
    return false;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw std::runtime_error("malformed float '" + s + "'");
    }
    return v;
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::runtime_error line_error(const std::string& path, std::size_t line_no, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line_no << ": " << msg;
    return std::runtime_error(os.str());
}

// Strips a single trailing '\r' so CRLF input loads like LF input.
bool next_line(std::ifstream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

} // namespace

LoadedEmbeddings load_embeddings(const std::string& path,
                                 std::optional<std::size_t> expected_dim,
                                 const std::vector<LanguageMeta>& known_languages) {
    auto in = open_or_throw(path);
    LoadedEmbeddings out;

    std::set<std::string> known;
    for (const auto& m : known_languages) known.insert(m.code);

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;

    std::map<std::tuple<std::string, std::string, Pos>, std::size_t> seen;

    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (!have_header) {
            const std::string t = trim(line);
            if (t.rfind("#dim=", 0) != 0) {
                throw line_error(path, line_no, "expected header '#dim=<d>', got '" + t + "'");
            }
            std::size_t dim = 0;
            const std::string num = t.substr(5);
            auto res = std::from_chars(num.data(), num.data() + num.size(), dim);
            if (res.ec != std::errc() || res.ptr != num.data() + num.size() || dim == 0) {
                throw line_error(path, line_no, "invalid dimension '" + num + "'");
            }
            if (expected_dim && *expected_dim != dim) {
                throw line_error(path, line_no,
                                 "dimension mismatch: file declares " + std::to_string(dim) +
                                     ", expected " + std::to_string(*expected_dim));
            }
            out.dimension = dim;
            have_header = true;
            continue;
        }
        if (line[0] == '#') continue;

        const auto fields = split(line, '\t');
        if (fields.size() != 6) {
            throw line_error(path, line_no,
                             "expected 6 tab-separated fields, got " + std::to_string(fields.size()));
        }

        EmbeddingRecord rec;
        rec.language = trim(fields[0]);
        rec.lemma = trim(fields[1]);
        if (rec.lemma.empty()) throw line_error(path, line_no, "empty lemma");
        if (!known.empty() && !known.count(rec.language)) {
            std::string codes;
            for (const auto& c : known) {
                if (!codes.empty()) codes += ", ";
                codes += c;
            }
            throw line_error(path, line_no,
                             "unknown language code '" + rec.language + "' (known: " + codes + ")");
        }
        try {
            rec.pos = pos_from_string(trim(fields[2]));
        } catch (const std::exception& e) {
            throw line_error(path, line_no, e.what());
        }

        const std::string cls = trim(fields[3]);
        if (cls != "-") {
            int v = 0;
            auto res = std::from_chars(cls.data(), cls.data() + cls.size(), v);
            if (res.ec != std::errc() || res.ptr != cls.data() + cls.size() || v < 1 || v > 19) {
                throw line_error(path, line_no, "invalid noun class '" + cls + "' (expected 1..19 or -)");
            }
            if (rec.pos != Pos::Noun) {
                throw line_error(path, line_no, "noun class given for non-noun record");
            }
            rec.noun_class = v;
        }

        const std::string gloss = trim(fields[4]);
        if (gloss != "-" && !gloss.empty()) rec.gloss = gloss;

        const auto value_strs = split(trim(fields[5]), ' ');
        rec.vector.reserve(value_strs.size());
        for (const auto& vs : value_strs) {
            if (vs.empty()) continue;
            try {
                rec.vector.push_back(parse_double(vs));
            } catch (const std::exception& e) {
                throw line_error(path, line_no, e.what());
            }
        }
        if (rec.vector.size() != out.dimension) {
            throw line_error(path, line_no,
                             "expected " + std::to_string(out.dimension) + " vector values, got " +
                                 std::to_string(rec.vector.size()));
        }

        const auto key = std::make_tuple(rec.language, fold_case(rec.lemma), rec.pos);
        auto [it, inserted] = seen.emplace(key, line_no);
        if (!inserted) {
            out.warnings.push_back("duplicate record (" + rec.language + ", " + rec.lemma + ", " +
                                   pos_to_string(rec.pos) + ") at line " + std::to_string(line_no) +
                                   "; keeping first from line " + std::to_string(it->second));
            continue;
        }
        out.records.push_back(std::move(rec));
    }

    if (!have_header) {
        throw std::runtime_error(path + ": missing '#dim=<d>' header");
    }
    return out;
}

void write_embeddings(const std::string& path,
                      const std::vector<EmbeddingRecord>& records,
                      std::size_t dimension) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw std::runtime_error("cannot write file: " + path);
    outf << "#dim=" << dimension << "\n";
    for (const auto& rec : records) {
        if (rec.vector.size() != dimension) {
            throw std::runtime_error("record (" + rec.language + ", " + rec.lemma +
                                     ") has dimension " + std::to_string(rec.vector.size()) +
                                     ", expected " + std::to_string(dimension));
        }
        outf << rec.language << '\t' << rec.lemma << '\t' << pos_to_string(rec.pos) << '\t';
        if (rec.noun_class) {
            outf << *rec.noun_class;
        } else {
            outf << '-';
        }
        outf << '\t' << (rec.gloss ? *rec.gloss : std::string("-")) << '\t';
        for (std::size_t i = 0; i < rec.vector.size(); ++i) {
            if (i) outf << ' ';
            outf << format_double(rec.vector[i]);
        }
        outf << '\n';
    }
    if (!outf) throw std::runtime_error("write failed: " + path);
}

LoadedReconstructions load_reconstructions(const std::string& path) {
    auto in = open_or_throw(path);
    LoadedReconstructions out;
    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue; // blank lines are skipped silently
        if (line[0] == '#') continue;
        const auto fields = split(line, '\t');
        ReconstructionEntry e;
        e.proto_form = trim(fields[0]);
        if (e.proto_form.empty()) {
            out.warnings.push_back(path + ":" + std::to_string(line_no) +
                                   ": empty proto form, skipped");
            continue;
        }
        if (fields.size() > 1) {
            const std::string g = trim(fields[1]);
            if (!g.empty() && g != "-") e.gloss = g;
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

const std::vector<std::string>& default_asjp_concepts() {
    static const std::vector<std::string> concepts = {
        "I",      "you",   "we",     "one",     "two",   "person", "fish",
        "dog",    "louse", "tree",   "leaf",    "skin",  "blood",  "bone",
        "horn",   "ear",   "eye",    "nose",    "tooth", "tongue", "knee",
        "hand",   "breast","liver",  "drink",   "see",   "hear",   "die",
        "come",   "sun",   "star",   "water",   "stone", "fire",   "path",
        "mountain","night","full",   "new",     "name"};
    return concepts;
}

std::vector<std::string> load_concept_list(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<std::string> out;
    std::string line;
    while (next_line(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(t);
    }
    if (out.empty()) throw std::runtime_error(path + ": empty concept list");
    return out;
}

LoadedAsjp load_asjp(const std::string& path, const std::vector<std::string>& concepts) {
    auto in = open_or_throw(path);
    LoadedAsjp out;

    std::set<std::string> folded;
    for (const auto& c : concepts) folded.insert(fold_case(c));

    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (line[0] == '#') continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 3) {
            throw line_error(path, line_no,
                             "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
        }
        AsjpEntry e;
        e.language = trim(fields[0]);
        e.concept_name = fold_case(trim(fields[1]));
        e.form = trim(fields[2]);
        if (!folded.count(e.concept_name)) {
            throw line_error(path, line_no,
                             "unknown concept '" + e.concept_name + "' (closed list: " +
                                 join(concepts, ", ") + ")");
        }
        if (e.language.empty() || e.form.empty()) {
            throw line_error(path, line_no, "empty language or form field");
        }
        out.entries.push_back(std::move(e));
    }
    if (out.entries.empty()) {
        out.warnings.push_back(path + ": no wordlist entries loaded");
    }
    return out;
}

std::vector<LanguageMeta> load_language_meta(const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<LanguageMeta> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty() || line[0] == '#') continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 3) {
            throw line_error(path, line_no,
                             "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
        }
        LanguageMeta m;
        m.code = trim(fields[0]);
        m.name = trim(fields[1]);
        const std::string z = trim(fields[2]);
        if (m.code.size() != 3) {
            throw line_error(path, line_no, "language code '" + m.code + "' is not 3 characters");
        }
        if (z.size() != 1 || !is_valid_zone(z[0])) {
            throw line_error(path, line_no, "invalid zone '" + z + "' (expected one of C,E,G,H,J,N,S)");
        }
        m.zone = z[0];
        if (!seen.insert(m.code).second) {
            throw line_error(path, line_no, "duplicate language code '" + m.code + "'");
        }
        out.push_back(std::move(m));
    }
    if (out.empty()) throw std::runtime_error(path + ": no languages loaded");
    return out;
}

void write_language_meta(const std::string& path, const std::vector<LanguageMeta>& languages) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw std::runtime_error("cannot write file: " + path);
    for (const auto& m : languages) {
        outf << m.code << '\t' << m.name << '\t' << m.zone << '\n';
    }
    if (!outf) throw std::runtime_error("write failed: " + path);
}

std::set<std::string> load_wordlist(const std::string& path) {
    auto in = open_or_throw(path);
    std::set<std::string> out;
    std::string line;
    while (next_line(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.insert(fold_case(t));
    }
    return out;
}

} // namespace bantulex
