#include "tcbga/engine.hpp"

#include <atomic>
#include <chrono>

#include "tcbga/core.hpp"
#include "tcbga/error.hpp"
#include "tcbga/evolution.hpp"
#include "tcbga/genesis.hpp"
#include "tcbga/random.hpp"
#include "tcbga/stats.hpp"

#ifndef TCBGA_DATA_DIR
#define TCBGA_DATA_DIR "data"
#endif

namespace tcbga {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream indices under a run seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kCompetitionStream = 1;
constexpr std::uint64_t kFirstTribeStream = 2;

GenerationRecord snapshot(const Population& pop, std::size_t generation, const Individual& best) {
    GenerationRecord rec;
    rec.generation = generation;
    for (const auto& t : pop.tribes) {
        rec.tribe_best.push_back(*best_individual(t).fitness);
        rec.tribe_sizes.push_back(t.size());
    }
    rec.best_accuracy = *best.fitness;
    rec.best_popcount = best.mask.count();
    return rec;
}

const Individual& population_best(const Population& pop) {
    const Individual* best = nullptr;
    for (const auto& t : pop.tribes) {
        const Individual& e = best_individual(t);
        if (best == nullptr || fitter(e, *best)) best = &e;
    }
    return *best;
}

} // namespace

std::uint64_t run_seed(std::uint64_t master, std::size_t index) noexcept {
    return stream_seed(master, index);
}

RunResult run_once(const TribePlan& plan, const RunConfig& config, const FitnessFn& fitness,
                   std::size_t run_index) {
    const auto start = Clock::now();
    RunResult result;
    result.index = run_index;
    result.seed = run_seed(config.seed, run_index);

    std::atomic<std::size_t> requests{0};
    const Evaluator evaluate{[&](const Mask& m) {
                                 requests.fetch_add(1, std::memory_order_relaxed);
                                 return fitness(m);
                             },
                             config.threads};

    Rng init_rng = make_stream(result.seed, kInitStream);
    Rng competition_rng = make_stream(result.seed, kCompetitionStream);
    Population pop = init_population(plan, init_rng);
    std::vector<Rng> tribe_rngs;
    for (std::size_t k = 0; k < pop.tribes.size(); ++k) {
        tribe_rngs.push_back(make_stream(result.seed, kFirstTribeStream + k));
        evaluate(pop.tribes[k].individuals);
    }

    Individual best = population_best(pop);
    result.trace.push_back(snapshot(pop, 0, best));
    std::size_t stale = 0;

    for (std::size_t g = 1; g <= config.max_generations; ++g) {
        for (std::size_t k = 0; k < pop.tribes.size(); ++k) {
            evolve_generation(pop.tribes[k], config.evolution, evaluate, tribe_rngs[k]);
        }
        if (g % config.competition.interval == 0) {
            auto rec = apply_competition(pop, config.competition, evaluate, competition_rng);
            rec.generation = g;
            result.competitions.push_back(std::move(rec));
        }

        const Individual& incumbent = population_best(pop);
        if (*incumbent.fitness > *best.fitness) {
            stale = 0;
        } else {
            ++stale;
        }
        if (fitter(incumbent, best)) best = incumbent;
        result.trace.push_back(snapshot(pop, g, best));
        result.generations = g;
        if (stale >= config.patience) {
            result.converged = true;
            break;
        }
    }

    result.best_mask = best.mask;
    result.best_accuracy = *best.fitness;
    result.evaluations = requests.load();
    result.wall_seconds = seconds_since(start);
    return result;
}

void summarize(RunReport& report) {
    std::vector<double> acc;
    std::vector<double> sizes;
    for (const auto& r : report.runs) {
        acc.push_back(r.best_accuracy);
        sizes.push_back(static_cast<double>(r.best_mask.count()));
    }
    report.ac_ave = mean(acc);
    report.ac_std = sample_stddev(acc);
    report.as_num = mean(sizes);
}

std::filesystem::path default_descriptor_path() {
    return std::filesystem::path(TCBGA_DATA_DIR) / "datasets.json";
}

LoadedDataset load_dataset(const DatasetRef& ref) {
    if (ref.name.empty()) throw ConfigError("no dataset given");
    const std::filesystem::path as_path(ref.name);
    const bool looks_like_file =
        ref.name.find('/') != std::string::npos || as_path.has_extension() || std::filesystem::is_regular_file(as_path);
    if (looks_like_file) {
        CsvSchema schema;
        schema.label_column = ref.label_column;
        schema.delimiter = ref.delimiter;
        schema.header = ref.header;
        if (ref.missing) schema.missing = *ref.missing;
        return load_csv(as_path, schema);
    }
    const std::filesystem::path desc_path = ref.descriptors.empty() ? default_descriptor_path()
                                                                     : std::filesystem::path(ref.descriptors);
    const auto all = load_descriptors(desc_path);
    DatasetDescriptor desc = find_descriptor(all, ref.name);
    if (ref.missing) desc.schema.missing = *ref.missing;
    return load_described(desc, desc_path.parent_path());
}

RunReport run_experiment(const RunConfig& config, const Dataset& dataset, FitnessCache* cache) {
    const auto start = Clock::now();
    config.validate();

    RunReport report;
    report.config = config;
    report.dataset = dataset.name;
    report.n_features = dataset.n_features;
    report.n_instances = dataset.n_instances;
    report.n_classes = dataset.n_classes();
    report.plan = config.plan.resolve(dataset.n_features);
    if (!report.plan.allow_infeasible) {
        const auto issues = validate_plan(report.plan);
        if (!issues.empty()) {
            std::string msg = "infeasible tribe plan:";
            for (const auto& d : issues) msg += "\n  " + d.message;
            throw ConfigError(msg);
        }
    }

    const WrapperFitness wrapper(dataset, config.fitness);
    FitnessCache local;
    FitnessCache& memo = cache ? *cache : local;
    const auto known_before = memo.size();
    const FitnessFn fitness = with_cache(memo, [&](const Mask& m) { return wrapper.accuracy(m); });

    for (std::size_t i = 0; i < config.runs; ++i) report.runs.push_back(run_once(report.plan, config, fitness, i));

    summarize(report);
    // Concurrent misses on one mask may both evaluate; count distinct masks.
    report.classifier_evaluations = memo.size() - known_before;
    report.warnings = wrapper.warnings();
    report.wall_seconds = seconds_since(start);
    return report;
}

RunReport run_experiment(const RunConfig& config) {
    config.validate();
    auto loaded = load_dataset(config.dataset);
    auto report = run_experiment(config, loaded.dataset);
    if (loaded.report.rows_dropped > 0)
        report.warnings.push_back(std::to_string(loaded.report.rows_dropped) + " rows with missing values dropped");
    if (loaded.report.cells_imputed > 0)
        report.warnings.push_back(std::to_string(loaded.report.cells_imputed) + " missing cells imputed");
    return report;
}

bool sweepable(const std::string& parameter) {
    return parameter == "n_tribes" || parameter == "competition_interval";
}

SweepResult sweep(const RunConfig& config, const Dataset& dataset, const std::string& parameter,
                  const std::vector<std::string>& values) {
    if (!sweepable(parameter))
        throw ConfigError("cannot sweep '" + parameter + "'; choose n_tribes or competition_interval");
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    SweepResult out;
    out.parameter = parameter;
    for (const auto& v : values) {
        RunConfig c = config;
        apply_kv(c, parameter, v);
        if (parameter == "n_tribes") {
            c.plan.means.clear();
            c.plan.sigma = 0.0;
        }
        out.points.push_back({v, run_experiment(c, dataset)});
    }
    return out;
}

SweepResult sweep(const RunConfig& config, const std::string& parameter, const std::vector<std::string>& values) {
    config.validate();
    const auto loaded = load_dataset(config.dataset);
    return sweep(config, loaded.dataset, parameter, values);
}

} // namespace tcbga
