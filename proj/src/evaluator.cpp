#include "tcbga/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tcbga {

std::size_t Evaluator::operator()(std::span<Individual> individuals) const {
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < individuals.size(); ++i)
        if (!individuals[i].fitness) pending.push_back(i);
    if (pending.empty()) return 0;

    const unsigned workers = std::min<std::size_t>(threads == 0 ? 1 : threads, pending.size());
    if (workers <= 1) {
        for (auto i : pending) individuals[i].fitness = fn(individuals[i].mask);
        return pending.size();
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < pending.size(); k = next.fetch_add(1)) {
                    try {
                        auto& ind = individuals[pending[k]];
                        ind.fitness = fn(ind.mask);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(pending.size());
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return pending.size();
}

} // namespace tcbga
