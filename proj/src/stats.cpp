#include "bantulex/stats.hpp"

namespace bantulex {

namespace {

double group_mean_difference(const std::vector<double>& values, const std::vector<char>& is_within) {
    double sw = 0.0, sb = 0.0;
    std::size_t nw = 0, nb = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (is_within[i]) {
            sw += values[i];
            ++nw;
        } else {
            sb += values[i];
            ++nb;
        }
    }
    return sw / static_cast<double>(nw) - sb / static_cast<double>(nb);
}

} // namespace

PermutationResult mean_difference_test(const std::vector<double>& values,
                                       const std::vector<char>& is_within,
                                       int n_perm, std::uint64_t seed) {
    if (values.size() != is_within.size()) {
        throw std::invalid_argument("permutation test: values/labels size mismatch");
    }
    std::size_t nw = 0;
    for (char c : is_within) nw += (c != 0);
    if (nw == 0 || nw == values.size()) {
        throw std::invalid_argument("permutation test: both label groups must be non-empty");
    }

    PermutationResult res;
    res.observed = group_mean_difference(values, is_within);
    res.n_permutations = n_perm;
    res.seed = seed;
    res.p_value = permutation_pvalue(res.observed, n_perm, seed, [&](Rng& rng) {
        std::vector<char> labels = is_within;
        rng.shuffle(labels);
        return group_mean_difference(values, labels);
    });
    return res;
}

} // namespace bantulex
