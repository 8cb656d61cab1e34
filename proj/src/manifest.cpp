#include "bantulex/manifest.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace bantulex {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for digest: " + path);
    std::uint64_t h = 14695981039346656037ULL;
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex);
}

void RunManifest::add_input(const std::string& path) {
    inputs[path] = file_digest(path);
}

void RunManifest::add_output(const std::string& path) {
    outputs[path] = file_digest(path);
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["counts"] = counts;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace bantulex
