#pragma once
// Seeded permutation testing shared by the noun-class and zone analyses.
//
// Seeding contract: permutation i draws all of its randomness from an Rng
// seeded with derive_seed(seed, i). Results are therefore independent of
// evaluation order or worker count, and p-values are reproducible from
// (values, labels, n_perm, seed) alone.
//
// The p-value uses the add-one estimator p = (1 + #{stat_perm >= stat_obs})
// / (n_perm + 1), so p = 0 is impossible and ties count in favour of the
// null.

#include "bantulex/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bantulex {

// Generic engine. `stat_of_permutation(rng)` computes one permuted statistic
// and must take all randomness from the supplied rng.
template <typename StatFn>
double permutation_pvalue(double observed, int n_perm, std::uint64_t seed,
                          StatFn&& stat_of_permutation) {
    if (n_perm < 1) throw std::invalid_argument("permutation test: n_perm must be >= 1");
    std::size_t count = 0;
    for (int i = 0; i < n_perm; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        if (stat_of_permutation(rng) >= observed) ++count;
    }
    return (1.0 + static_cast<double>(count)) / (static_cast<double>(n_perm) + 1.0);
}

struct PermutationResult {
    double observed = 0.0;   // mean(within) - mean(between)
    double p_value = 1.0;    // one-sided, add-one estimator
    int n_permutations = 0;
    std::uint64_t seed = 0;
};

// One-sided two-group test over paired values: statistic is
// mean(within-labelled values) - mean(between-labelled values); labels are
// permuted over the value vector. Both groups must be non-empty.
PermutationResult mean_difference_test(const std::vector<double>& values,
                                       const std::vector<char>& is_within,
                                       int n_perm, std::uint64_t seed);

} // namespace bantulex
