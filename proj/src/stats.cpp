#include "tcbga/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "tcbga/error.hpp"

namespace tcbga {

double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(df), x));
}

std::vector<double> descending_ranks(std::span<const double> values) {
    const std::size_t k = values.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> ranks(k);
    for (std::size_t i = 0; i < k;) {
        std::size_t j = i;
        while (j + 1 < k && values[order[j + 1]] == values[order[i]]) ++j;
        // Positions i..j (0-based) hold ranks i+1..j+1.
        const double shared = 0.5 * static_cast<double>(i + j + 2);
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

FriedmanResult friedman_test(const std::vector<std::vector<double>>& matrix) {
    const std::size_t k = matrix.size();
    if (k < 2) throw DataError("Friedman test needs at least 2 methods");
    const std::size_t n = matrix.front().size();
    if (n < 2) throw DataError("Friedman test needs at least 2 datasets");
    for (const auto& row : matrix) {
        if (row.size() != n) throw DataError("Friedman test: methods cover different numbers of datasets");
        for (double v : row)
            if (!std::isfinite(v)) throw DataError("Friedman test: missing or non-finite cell");
    }

    FriedmanResult r;
    r.df = k - 1;
    r.average_ranks.assign(k, 0.0);
    std::vector<double> column(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) column[j] = matrix[j][i];
        const auto ranks = descending_ranks(column);
        for (std::size_t j = 0; j < k; ++j) r.average_ranks[j] += ranks[j];
    }
    for (auto& rank : r.average_ranks) rank /= static_cast<double>(n);

    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    double sum_sq = 0.0;
    for (double rank : r.average_ranks) sum_sq += rank * rank;
    r.chi_square = 12.0 * nd / (kd * (kd + 1.0)) * (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
    // Guard against -0 and rounding just below zero.
    if (r.chi_square < 1e-12) r.chi_square = 0.0;
    r.p_value = chi_square_sf(r.chi_square, static_cast<double>(r.df));
    return r;
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

PairedTTest paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DataError("paired t-test: samples differ in length");
    if (a.size() < 2) throw DataError("paired t-test needs at least 2 pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];

    PairedTTest r;
    r.n = d.size();
    r.mean_difference = mean(d);
    r.sd_difference = sample_stddev(d);
    if (!(r.sd_difference > 0.0)) return r;

    const double se = r.sd_difference / std::sqrt(static_cast<double>(r.n));
    r.t = r.mean_difference / se;
    const boost::math::students_t_distribution<double> dist(static_cast<double>(r.n - 1));
    r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(*r.t)));
    return r;
}

} // namespace tcbga
