#pragma once
// Run manifests: a machine-readable record of what a command did, sufficient
// to reproduce the run bit-exactly (config echo, seed, input/output
// digests). Contains nothing time- or host-dependent.

#include <cstdint>
#include <map>
#include <string>

namespace bantulex {

// FNV-1a over the file bytes, as a fixed-width hex string.
std::string file_digest(const std::string& path);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> inputs;  // path -> digest
    std::map<std::string, std::string> outputs; // path -> digest
    std::map<std::string, std::int64_t> counts;

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    void write(const std::string& path) const;
};

} // namespace bantulex
