#pragma once

/// @file stats.hpp
/// @brief Nonparametric and paired comparisons of methods over datasets.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tcbga {

/// Upper tail P(X >= x) of a chi-square variable with `df` degrees of freedom.
double chi_square_sf(double x, double df);

struct FriedmanResult {
    double chi_square = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
    /// Mean rank per method; rank 1 is the highest accuracy.
    std::vector<double> average_ranks;
};

/// `matrix[j][i]` is the accuracy of method j on dataset i. Ties within a
/// dataset share the mean of the ranks they span. Throws DataError on a
/// ragged or non-finite matrix, or fewer than 2 methods or datasets.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& matrix);

/// Ranks of `values` within one dataset, 1 for the largest, ties averaged.
std::vector<double> descending_ranks(std::span<const double> values);

struct PairedTTest {
    std::size_t n = 0;
    double mean_difference = 0.0;
    /// Sample standard deviation of a_i - b_i.
    double sd_difference = 0.0;
    /// Both empty when the differences have zero variance.
    std::optional<double> t;
    std::optional<double> p_value;

    bool defined() const noexcept { return p_value.has_value(); }
};

/// Two-sided paired t-test of a against b. Throws DataError when the
/// lengths differ or are below 2.
PairedTTest paired_t_test(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> values);

} // namespace tcbga
