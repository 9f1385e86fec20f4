#include "tcbga/genesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tcbga/error.hpp"

namespace tcbga {

std::vector<double> gaussian_weights(std::size_t n_features, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    std::vector<double> w(n_features + 1, 0.0);
    double total = 0.0;
    for (std::size_t m = 1; m <= n_features; ++m) {
        const double z = (static_cast<double>(m) - mu) / sigma;
        w[m] = std::exp(-0.5 * z * z);
        total += w[m];
    }
    // The 1 / (sigma sqrt(2 pi)) factor cancels in the normalization.
    if (total > 0.0)
        for (auto& x : w) x /= total;
    return w;
}

Allocation allocate_counts(std::size_t n_features, double mu, double sigma, std::size_t size) {
    if (n_features == 0) throw std::invalid_argument("allocate_counts needs N >= 1");
    if (mu < 1.0 || mu > static_cast<double>(n_features))
        throw std::invalid_argument("tribe mean outside [1, N]");

    Allocation alloc{CountHistogram(n_features), mu, sigma, size};
    if (size == 0) return alloc;

    const auto weights = gaussian_weights(n_features, mu, sigma);
    // Signed remainder quota - count after per-bin rounding.
    std::vector<double> remainder(n_features + 1, 0.0);
    std::size_t assigned = 0;
    for (std::size_t m = 1; m <= n_features; ++m) {
        const double quota = weights[m] * static_cast<double>(size);
        alloc.counts[m] = static_cast<std::size_t>(std::round(quota));
        remainder[m] = quota - static_cast<double>(alloc.counts[m]);
        assigned += alloc.counts[m];
    }

    auto closer = [&](std::size_t a, std::size_t b) {
        const double da = std::abs(static_cast<double>(a) - mu);
        const double db = std::abs(static_cast<double>(b) - mu);
        if (da != db) return da < db;
        return a < b;
    };
    std::vector<std::size_t> order(n_features);
    std::iota(order.begin(), order.end(), std::size_t{1});
    if (assigned < size) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
            return closer(a, b);
        });
        for (std::size_t i = 0; assigned < size; i = (i + 1) % order.size()) {
            ++alloc.counts[order[i]];
            ++assigned;
        }
    } else if (assigned > size) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] < remainder[b];
            return closer(b, a);
        });
        // First pass keeps every occupied bin occupied.
        for (std::size_t keep : {std::size_t{1}, std::size_t{0}}) {
            bool progress = true;
            while (assigned > size && progress) {
                progress = false;
                for (std::size_t i = 0; i < order.size() && assigned > size; ++i) {
                    if (alloc.counts[order[i]] > keep) {
                        --alloc.counts[order[i]];
                        --assigned;
                        progress = true;
                    }
                }
            }
        }
    }
    return alloc;
}

Individual sample_individual(std::size_t n_features, std::size_t cardinality, Rng& rng) {
    if (cardinality == 0 || cardinality > n_features)
        throw std::invalid_argument("cardinality outside [1, N]");
    std::vector<std::size_t> positions(n_features);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `cardinality` slots end up a uniform subset.
    for (std::size_t i = 0; i < cardinality; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n_features - 1);
        std::swap(positions[i], positions[pick(rng)]);
    }
    Mask mask(n_features);
    for (std::size_t i = 0; i < cardinality; ++i) mask.set(positions[i]);
    return Individual(std::move(mask));
}

Tribe sample_tribe(std::size_t n_features, double mu, double sigma, std::size_t size, Rng& rng) {
    const Allocation alloc = allocate_counts(n_features, mu, sigma, size);
    Tribe tribe;
    tribe.mu = mu;
    tribe.sigma = sigma;
    tribe.individuals.reserve(size);
    for (std::size_t m = 1; m <= n_features; ++m) {
        for (std::size_t c = 0; c < alloc.counts[m]; ++c)
            tribe.individuals.push_back(sample_individual(n_features, m, rng));
    }
    return tribe;
}

Population init_population(const TribePlan& plan, Rng& rng) {
    if (!plan.allow_infeasible) {
        const auto issues = validate_plan(plan);
        if (!issues.empty()) {
            std::string msg = "infeasible tribe plan:";
            for (const auto& d : issues) msg += "\n  " + d.message;
            throw ConfigError(msg);
        }
    } else if (plan.means.size() != plan.n_tribes || plan.n_features == 0) {
        throw ConfigError("malformed tribe plan");
    }

    const std::uint64_t base = rng();
    Population pop;
    pop.tribes.reserve(plan.n_tribes);
    for (std::size_t k = 0; k < plan.n_tribes; ++k) {
        Rng stream = make_stream(base, k);
        pop.tribes.push_back(
            sample_tribe(plan.n_features, plan.means[k], plan.sigma, plan.tribe_size, stream));
    }
    return pop;
}

} // namespace tcbga
