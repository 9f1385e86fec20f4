#include "tcbga/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tcbga/genesis.hpp"

namespace tcbga {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

double sigma_upper_coefficient() noexcept {
    return 2.0 / std::sqrt(2.0 * std::numbers::pi) * std::exp(-4.5);
}

double tribe_count_coefficient() noexcept {
    return std::sqrt(2.0 * std::numbers::pi) / (6.0 * std::exp(-4.5));
}

double derive_sigma(std::size_t n_features, std::size_t n_tribes) {
    if (n_features == 0 || n_tribes == 0)
        throw std::invalid_argument("derive_sigma needs N >= 1 and N_T >= 1");
    return static_cast<double>(n_features) / (3.0 * static_cast<double>(n_tribes + 1));
}

std::size_t derive_tribe_count(std::size_t n_features, std::size_t tribe_size) {
    if (n_features == 0 || tribe_size == 0)
        throw std::invalid_argument("derive_tribe_count needs N >= 1 and N_Tk >= 1");
    const double raw = tribe_count_coefficient() * static_cast<double>(n_features) /
                           static_cast<double>(tribe_size) -
                       1.0;
    const double suggested = std::ceil(raw);
    return suggested < 3.0 ? 3 : static_cast<std::size_t>(suggested);
}

std::vector<double> place_means(std::size_t n_features, std::size_t n_tribes) {
    if (n_tribes == 0 || n_features < n_tribes)
        throw std::invalid_argument("place_means needs 1 <= N_T <= N");
    std::vector<double> means;
    means.reserve(n_tribes);
    const double step = static_cast<double>(n_features) / static_cast<double>(n_tribes + 1);
    for (std::size_t k = 1; k <= n_tribes; ++k) {
        // std::round rounds half away from zero.
        double mu = std::round(static_cast<double>(k) * step);
        mu = std::clamp(mu, 1.0, static_cast<double>(n_features));
        if (!means.empty() && mu <= means.back())
            throw std::invalid_argument("tribe means collapse: N too small for N_T tribes");
        means.push_back(mu);
    }
    return means;
}

TribePlan derive_plan(std::size_t n_features, std::size_t tribe_size, std::size_t n_tribes) {
    TribePlan plan;
    plan.n_features = n_features;
    plan.tribe_size = tribe_size;
    plan.n_tribes = n_tribes != 0 ? n_tribes : derive_tribe_count(n_features, tribe_size);
    plan.sigma = derive_sigma(n_features, plan.n_tribes);
    plan.means = place_means(n_features, plan.n_tribes);
    return plan;
}

std::vector<PlanDiagnostic> validate_plan(const TribePlan& plan) {
    std::vector<PlanDiagnostic> out;
    const auto n = static_cast<double>(plan.n_features);

    if (plan.n_features == 0 || plan.n_tribes == 0 || plan.tribe_size == 0 ||
        plan.means.size() != plan.n_tribes || !(plan.sigma > 0.0)) {
        out.push_back({PlanIssue::Malformed,
                       "plan needs N, N_T, N_Tk >= 1, one mean per tribe and sigma > 0"});
        return out;
    }
    for (std::size_t k = 0; k < plan.means.size(); ++k) {
        const double mu = plan.means[k];
        if (mu < 1.0 || mu > n || (k > 0 && mu <= plan.means[k - 1])) {
            out.push_back({PlanIssue::Malformed,
                           "tribe means must be strictly increasing within [1, N]"});
            return out;
        }
    }

    constexpr double slack = 1e-9;
    const double lower = derive_sigma(plan.n_features, plan.n_tribes);
    if (plan.sigma < lower - slack) {
        out.push_back({PlanIssue::SigmaBelowCoverage,
                       "sigma below coverage bound (" + format_number(plan.sigma) + " < " +
                           format_number(lower) + ")"});
    }
    const double upper = sigma_upper_coefficient() * static_cast<double>(plan.tribe_size);
    if (plan.sigma > upper + slack) {
        out.push_back({PlanIssue::SigmaAboveEdgeBound,
                       "sigma upper bound violated (" + format_number(plan.sigma) + " > " +
                           format_number(upper) + ")"});
    }
    if (plan.sigma <= kMinimumSigma) {
        out.push_back({PlanIssue::SigmaTooSmall,
                       "normalization approximation invalid (sigma <= 0.7)"});
    }

    // Band edges of each tribe: the outermost cardinalities within
    // mu +- N/(N_T+1), which must each hold at least one individual.
    const double half_width = n / static_cast<double>(plan.n_tribes + 1);
    for (std::size_t k = 0; k < plan.means.size(); ++k) {
        const double mu = plan.means[k];
        const auto lo = static_cast<std::size_t>(std::max(1.0, std::ceil(mu - half_width - slack)));
        const auto hi = static_cast<std::size_t>(std::min(n, std::floor(mu + half_width + slack)));
        const Allocation alloc = allocate_counts(plan.n_features, mu, plan.sigma, plan.tribe_size);
        for (std::size_t edge : {lo, hi}) {
            if (alloc.counts[edge] < 1) {
                out.push_back({PlanIssue::EdgeUncovered,
                               "tribe " + std::to_string(k + 1) + " holds no individual at edge cardinality " +
                                   std::to_string(edge)});
                break;
            }
        }
    }
    return out;
}

} // namespace tcbga
