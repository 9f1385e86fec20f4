#pragma once

/// @file params.hpp
/// @brief Closed-form tribe layout: spread sigma, tribe count and tribe means.
///
/// Each tribe covers the cardinality band [mu_k - 3 sigma, mu_k + 3 sigma]
/// and adjacent bands overlap by half, which gives
///
///     N / (3 (N_T + 1))  <=  sigma  <=  (2 / sqrt(2 pi)) e^(-9/2) N_Tk
///
/// The lower bound keeps every cardinality reachable; the upper bound keeps
/// at least one individual at the band edges of a tribe of size N_Tk.

#include <cstddef>
#include <string>
#include <vector>

namespace tcbga {

/// (2 / sqrt(2 pi)) e^(-9/2), about 0.008864.
double sigma_upper_coefficient() noexcept;
/// sqrt(2 pi) / (6 e^(-9/2)), about 37.6066.
double tribe_count_coefficient() noexcept;

/// Normalization of the discrete Gaussian is only close to 1 above this.
inline constexpr double kMinimumSigma = 0.7;

struct TribePlan {
    std::size_t n_features = 0;
    std::size_t n_tribes = 0;
    std::size_t tribe_size = 0;
    std::vector<double> means;
    double sigma = 0.0;
    /// Admit the plan even when validate_plan reports diagnostics.
    bool allow_infeasible = false;

    std::size_t population() const noexcept { return n_tribes * tribe_size; }
};

double derive_sigma(std::size_t n_features, std::size_t n_tribes);
std::size_t derive_tribe_count(std::size_t n_features, std::size_t tribe_size);

/// mu_k = round(k N / (N_T + 1)), rounding half away from zero.
/// Throws std::invalid_argument if two means collapse.
std::vector<double> place_means(std::size_t n_features, std::size_t n_tribes);

/// Plan from the closed-form rules. `n_tribes` of 0 means "derive it".
TribePlan derive_plan(std::size_t n_features, std::size_t tribe_size, std::size_t n_tribes = 0);

enum class PlanIssue {
    Malformed,
    SigmaBelowCoverage,
    SigmaAboveEdgeBound,
    SigmaTooSmall,
    EdgeUncovered,
};

struct PlanDiagnostic {
    PlanIssue issue;
    std::string message;
};

/// Empty for a feasible plan; one diagnostic per violated constraint.
std::vector<PlanDiagnostic> validate_plan(const TribePlan& plan);

} // namespace tcbga
