#pragma once

#include <cstddef>

#include "tcbga/core.hpp"
#include "tcbga/params.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

struct Allocation {
    CountHistogram counts;
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t size = 0;
};

/// Discrete Gaussian weights over m in [1, N], normalized to sum to 1.
std::vector<double> gaussian_weights(std::size_t n_features, double mu, double sigma);

/// Target histogram for a tribe. Each quota size * weight(m) is rounded,
/// then the residue is repaired by largest remainder so the counts sum to
/// `size` exactly: seats are added where quota - count is largest and taken
/// where it is smallest, never emptying an occupied bin while another bin
/// can give. Ties among additions go to the bin closer to mu, then the
/// smaller m; removals use the reverse order.
Allocation allocate_counts(std::size_t n_features, double mu, double sigma, std::size_t size);

/// Uniformly random mask with exactly `cardinality` bits set.
Individual sample_individual(std::size_t n_features, std::size_t cardinality, Rng& rng);

/// A tribe realizing allocate_counts(N, mu, sigma, size); fitness unset.
Tribe sample_tribe(std::size_t n_features, double mu, double sigma, std::size_t size, Rng& rng);

/// One tribe per plan mean, each drawn from its own stream seeded from `rng`.
/// Throws ConfigError on an infeasible plan unless plan.allow_infeasible.
Population init_population(const TribePlan& plan, Rng& rng);

} // namespace tcbga
