#pragma once

/// @file engine.hpp
/// @brief Run orchestration: init, intra-tribe evolution, periodic
/// competition, convergence, repetitions and parameter sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tcbga/competition.hpp"
#include "tcbga/config.hpp"
#include "tcbga/data.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/fitness.hpp"
#include "tcbga/mask.hpp"
#include "tcbga/params.hpp"

namespace tcbga {

struct GenerationRecord {
    std::size_t generation = 0;
    /// Elitist fitness of each tribe.
    std::vector<double> tribe_best;
    std::vector<std::size_t> tribe_sizes;
    /// Global best so far.
    double best_accuracy = 0.0;
    std::size_t best_popcount = 0;
};

struct RunResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Mask best_mask;
    double best_accuracy = 0.0;
    /// Last generation executed; 0 when only the initial population exists.
    std::size_t generations = 0;
    /// True when the run stopped on patience rather than max_generations.
    bool converged = false;
    /// Entry 0 describes the initial population.
    std::vector<GenerationRecord> trace;
    std::vector<CompetitionRecord> competitions;
    /// Fitness requests made by this run, cached or not.
    std::size_t evaluations = 0;
    double wall_seconds = 0.0;
};

struct RunReport {
    RunConfig config;
    std::string dataset;
    std::size_t n_features = 0;
    std::size_t n_instances = 0;
    std::size_t n_classes = 0;
    TribePlan plan;
    std::vector<RunResult> runs;
    /// Mean and sample standard deviation of per-run best accuracy, both in
    /// percentage points.
    double ac_ave = 0.0;
    double ac_std = 0.0;
    /// Mean popcount of the per-run best masks.
    double as_num = 0.0;
    /// Distinct masks scored by the classifier across all runs.
    std::size_t classifier_evaluations = 0;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;
};

/// Seed of repetition `index` under `master`.
std::uint64_t run_seed(std::uint64_t master, std::size_t index) noexcept;

/// One repetition against an arbitrary fitness function.
RunResult run_once(const TribePlan& plan, const RunConfig& config, const FitnessFn& fitness,
                   std::size_t run_index);

/// Recompute AC_ave, AC_std and AS_num from report.runs.
void summarize(RunReport& report);

/// Bundled descriptor file, data/datasets.json in the source tree.
std::filesystem::path default_descriptor_path();

/// Resolve a descriptor name or a file path into a loaded dataset.
LoadedDataset load_dataset(const DatasetRef& ref);

/// All repetitions of `config` on `dataset`. `cache`, when given, must only
/// ever have seen this dataset under config.fitness.
RunReport run_experiment(const RunConfig& config, const Dataset& dataset, FitnessCache* cache = nullptr);
RunReport run_experiment(const RunConfig& config);

struct SweepPoint {
    std::string value;
    RunReport report;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepPoint> points;
};

/// Parameters sweep accepts: n_tribes and competition_interval.
bool sweepable(const std::string& parameter);

/// One run_experiment per value, all under config.seed. Setting n_tribes
/// re-derives sigma and the means for each value.
SweepResult sweep(const RunConfig& config, const Dataset& dataset, const std::string& parameter,
                  const std::vector<std::string>& values);
SweepResult sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values);

} // namespace tcbga
