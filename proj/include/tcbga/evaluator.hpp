#pragma once

#include <functional>
#include <span>

#include "tcbga/core.hpp"

namespace tcbga {

/// Fitness of a mask, in percent. Must be pure: the same mask always maps
/// to the same value, whatever thread evaluates it.
using FitnessFn = std::function<double(const Mask&)>;

/// Fills in missing fitness values, optionally across worker threads.
/// Results never depend on the thread count.
struct Evaluator {
    FitnessFn fn;
    unsigned threads = 1;

    /// Returns the number of individuals evaluated. The first exception
    /// thrown by `fn` is rethrown after all workers have stopped.
    std::size_t operator()(std::span<Individual> individuals) const;
};

} // namespace tcbga
