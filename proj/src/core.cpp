#include "tcbga/core.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tcbga {

std::size_t& CountHistogram::operator[](std::size_t m) {
    if (m == 0 || m >= counts_.size())
        throw std::out_of_range("cardinality " + std::to_string(m) + " outside [1, N]");
    return counts_[m];
}

std::size_t CountHistogram::operator[](std::size_t m) const {
    if (m == 0 || m >= counts_.size())
        throw std::out_of_range("cardinality " + std::to_string(m) + " outside [1, N]");
    return counts_[m];
}

std::size_t CountHistogram::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t CountHistogram::min_cardinality() const noexcept {
    for (std::size_t m = 1; m < counts_.size(); ++m)
        if (counts_[m] != 0) return m;
    return 0;
}

std::size_t CountHistogram::max_cardinality() const noexcept {
    for (std::size_t m = counts_.size(); m-- > 1;)
        if (counts_[m] != 0) return m;
    return 0;
}

std::size_t Population::total_size() const noexcept {
    std::size_t n = 0;
    for (const auto& t : tribes) n += t.size();
    return n;
}

std::vector<std::size_t> Population::tribe_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(tribes.size());
    for (const auto& t : tribes) sizes.push_back(t.size());
    return sizes;
}

std::size_t count_selected(const Individual& ind) noexcept { return ind.mask.count(); }

CountHistogram histogram(std::span<const Individual> individuals, std::size_t n_features) {
    CountHistogram h(n_features);
    for (const auto& ind : individuals) {
        if (ind.mask.size() != n_features)
            throw std::invalid_argument("mask length differs from the histogram domain");
        ++h[count_selected(ind)];
    }
    return h;
}

CountHistogram histogram(const Tribe& tribe, std::size_t n_features) {
    if (n_features == 0 && !tribe.individuals.empty())
        n_features = tribe.individuals.front().mask.size();
    return histogram(std::span<const Individual>(tribe.individuals), n_features);
}

bool fitter(const Individual& a, const Individual& b) {
    if (!a.fitness || !b.fitness) throw std::invalid_argument("fitness not evaluated");
    if (*a.fitness != *b.fitness) return *a.fitness > *b.fitness;
    return count_selected(a) < count_selected(b);
}

std::size_t best_index(std::span<const Individual> individuals) {
    if (individuals.empty()) throw std::invalid_argument("best of an empty tribe");
    std::size_t best = 0;
    if (!individuals[0].fitness) throw std::invalid_argument("fitness not evaluated");
    for (std::size_t i = 1; i < individuals.size(); ++i) {
        if (fitter(individuals[i], individuals[best])) best = i;
    }
    return best;
}

const Individual& best_individual(const Tribe& tribe) {
    return tribe.individuals[best_index(tribe.individuals)];
}

} // namespace tcbga
