#include "tcbga/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "tcbga/error.hpp"

namespace tcbga {

namespace {

Mask mask_from_code(std::size_t n_features, std::uint64_t code) {
    Mask m(n_features);
    for (std::size_t i = 0; i < n_features; ++i)
        if ((code >> i) & 1ULL) m.set(i);
    return m;
}

struct Best {
    bool valid = false;
    double accuracy = 0.0;
    Mask mask;

    void offer(double acc, Mask&& m) {
        if (!valid || oracle_prefers(acc, m, accuracy, mask)) {
            valid = true;
            accuracy = acc;
            mask = std::move(m);
        }
    }
};

} // namespace

bool oracle_prefers(double acc_a, const Mask& a, double acc_b, const Mask& b) {
    if (acc_a != acc_b) return acc_a > acc_b;
    const auto ca = a.count();
    const auto cb = b.count();
    if (ca != cb) return ca < cb;
    return lexicographic_less(a, b);
}

OracleResult exhaustive_best_subset(std::size_t n_features, const FitnessFn& fitness,
                                    const ExhaustiveOptions& options) {
    if (n_features == 0) throw ConfigError("exhaustive search needs at least one feature");
    if (n_features > 63) throw ConfigError("exhaustive search is limited to 63 features");
    if (n_features > options.cap && !options.force)
        throw ConfigError("exhaustive search over " + std::to_string(n_features) + " features exceeds the cap of " +
                          std::to_string(options.cap) + "; pass force to override");

    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t last = (1ULL << n_features) - 1;
    const unsigned workers = std::max(1u, options.threads);

    std::vector<Best> partial(workers);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](unsigned w) {
        try {
            for (std::uint64_t code = 1 + w; code <= last; code += workers) {
                Mask m = mask_from_code(n_features, code);
                const double acc = fitness(m);
                partial[w].offer(acc, std::move(m));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    if (failure) std::rethrow_exception(failure);

    Best best;
    for (auto& p : partial)
        if (p.valid) best.offer(p.accuracy, std::move(p.mask));

    OracleResult r;
    r.best_mask = std::move(best.mask);
    r.best_accuracy = best.accuracy;
    r.evaluated_count = last;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

OracleResult exhaustive_best_subset(const Dataset& dataset, const FitnessProtocol& protocol,
                                    const ExhaustiveOptions& options) {
    const WrapperFitness wrapper(dataset, protocol);
    return exhaustive_best_subset(dataset.n_features, [&](const Mask& m) { return wrapper.accuracy(m); },
                                  options);
}

CountHistogram brute_force_histogram(const Tribe& tribe, std::size_t n_features) {
    CountHistogram h(n_features);
    for (const auto& ind : tribe.individuals) {
        std::size_t ones = 0;
        const std::string bits = ind.mask.to_string();
        for (char c : bits)
            if (c == '1') ++ones;
        if (ones >= 1 && ones <= n_features) ++h[ones];
    }
    return h;
}

} // namespace tcbga
