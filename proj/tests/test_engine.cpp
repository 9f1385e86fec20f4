#include "doctest.h"

#include <numeric>

#include "support.hpp"
#include "tcbga/engine.hpp"
#include "tcbga/error.hpp"

using namespace tcbga;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.dataset.name = "wbcd";
    c.plan.tribe_size = 60;
    c.plan.allow_infeasible = true;
    c.max_generations = 8;
    c.patience = 100;
    c.runs = 2;
    return c;
}

const Dataset& wbcd() {
    static const Dataset ds = load_dataset({.name = "wbcd"}).dataset;
    return ds;
}

TribePlan synthetic_plan() {
    auto plan = derive_plan(12, 80);
    plan.allow_infeasible = true;
    return plan;
}

const FitnessFn synthetic = [](const Mask& m) { return test::synthetic_fitness(m); };

bool same_runs(const RunReport& a, const RunReport& b) {
    if (a.runs.size() != b.runs.size()) return false;
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        const auto& x = a.runs[i];
        const auto& y = b.runs[i];
        if (x.best_mask != y.best_mask || x.best_accuracy != y.best_accuracy || x.generations != y.generations ||
            x.trace.size() != y.trace.size())
            return false;
        for (std::size_t g = 0; g < x.trace.size(); ++g)
            if (x.trace[g].tribe_best != y.trace[g].tribe_best || x.trace[g].tribe_sizes != y.trace[g].tribe_sizes)
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("zero generations reports the initial population") {
    RunConfig c = small_config();
    c.max_generations = 0;
    const auto r = run_once(synthetic_plan(), c, synthetic, 0);
    CHECK(r.generations == 0);
    CHECK(r.trace.size() == 1);
    CHECK(r.competitions.empty());
    CHECK_FALSE(r.converged);
    CHECK(r.best_accuracy == *std::max_element(r.trace[0].tribe_best.begin(), r.trace[0].tribe_best.end()));
    CHECK(r.evaluations == synthetic_plan().population());
}

TEST_CASE("trace invariants on a synthetic landscape") {
    RunConfig c = small_config();
    c.max_generations = 40;
    const auto plan = synthetic_plan();
    const auto r = run_once(plan, c, synthetic, 3);
    CHECK(r.trace.size() == r.generations + 1);
    CHECK(r.competitions.size() == r.generations / c.competition.interval);
    for (std::size_t g = 0; g < r.trace.size(); ++g) {
        const auto& rec = r.trace[g];
        CHECK(rec.generation == g);
        CHECK(std::accumulate(rec.tribe_sizes.begin(), rec.tribe_sizes.end(), std::size_t{0}) == plan.population());
        CHECK(rec.best_accuracy >= *std::max_element(rec.tribe_best.begin(), rec.tribe_best.end()));
        if (g > 0) CHECK(rec.best_accuracy >= r.trace[g - 1].best_accuracy);
    }
    CHECK(r.best_accuracy == r.trace.back().best_accuracy);
    CHECK(r.best_mask.count() == r.trace.back().best_popcount);
    CHECK(test::synthetic_fitness(r.best_mask) == r.best_accuracy);
}

TEST_CASE("patience stops a stalled run") {
    RunConfig c = small_config();
    c.max_generations = 500;
    c.patience = 3;
    const FitnessFn flat = [](const Mask&) { return 50.0; };
    const auto r = run_once(synthetic_plan(), c, flat, 0);
    CHECK(r.converged);
    CHECK(r.generations == 3);
}

TEST_CASE("runs have distinct seeds; repeated runs are identical") {
    CHECK(run_seed(1, 0) != run_seed(1, 1));
    CHECK(run_seed(1, 0) != run_seed(2, 0));
    const auto c = small_config();
    const auto a = run_once(synthetic_plan(), c, synthetic, 1);
    const auto b = run_once(synthetic_plan(), c, synthetic, 1);
    CHECK(a.best_mask == b.best_mask);
    CHECK(a.trace.back().tribe_sizes == b.trace.back().tribe_sizes);
    CHECK(a.seed == run_seed(c.seed, 1));
}

TEST_CASE("run_experiment is reproducible and independent of thread count") {
    auto c = small_config();
    const auto a = run_experiment(c, wbcd());
    const auto b = run_experiment(c, wbcd());
    c.threads = 3;
    const auto d = run_experiment(c, wbcd());
    CHECK(same_runs(a, b));
    CHECK(same_runs(a, d));
    CHECK(a.ac_ave == d.ac_ave);
    CHECK(a.classifier_evaluations == d.classifier_evaluations);
    CHECK(a.plan.n_tribes == 5);
    CHECK(a.n_instances == 683);
}

TEST_CASE("summary arithmetic") {
    RunReport r;
    for (auto [acc, bits] : {std::pair{96.0, "110000000"}, std::pair{97.0, "111100000"}, std::pair{98.5, "100000000"}}) {
        RunResult run;
        run.best_accuracy = acc;
        run.best_mask = Mask::from_string(bits);
        r.runs.push_back(run);
    }
    summarize(r);
    CHECK(r.ac_ave == doctest::Approx(97.1666666666667));
    CHECK(r.ac_std == doctest::Approx(std::sqrt((1.3611111111 + 0.0277777778 + 1.7777777778) / 2.0)).epsilon(1e-8));
    CHECK(r.as_num == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("a single-value sweep equals run_experiment") {
    auto c = small_config();
    c.runs = 1;
    c.max_generations = 4;
    const auto s = sweep(c, wbcd(), "competition_interval", {"2"});
    REQUIRE(s.points.size() == 1);
    CHECK(s.parameter == "competition_interval");
    CHECK(same_runs(s.points[0].report, run_experiment(c, wbcd())));
}

TEST_CASE("sweeping the tribe count re-derives the plan") {
    auto c = small_config();
    c.runs = 1;
    c.max_generations = 2;
    c.plan.means = {2, 5, 7};
    const auto s = sweep(c, wbcd(), "n_tribes", {"2", "4"});
    CHECK(s.points[0].report.plan.n_tribes == 2);
    CHECK(s.points[0].report.plan.means == std::vector<double>{3, 6});
    CHECK(s.points[1].report.plan.n_tribes == 4);
    CHECK_THROWS_AS(sweep(c, wbcd(), "seed", {"1"}), ConfigError);
    CHECK_THROWS_AS(sweep(c, wbcd(), "n_tribes", {}), ConfigError);
}

TEST_CASE("infeasible plans are refused unless allowed") {
    auto c = small_config();
    c.plan.allow_infeasible = false;
    CHECK_THROWS_AS(run_experiment(c, wbcd()), ConfigError);
}

TEST_CASE("a shared cache changes no result") {
    auto c = small_config();
    c.runs = 1;
    FitnessCache cache;
    const auto a = run_experiment(c, wbcd(), &cache);
    const auto b = run_experiment(c, wbcd(), &cache);
    CHECK(same_runs(a, b));
    CHECK(a.classifier_evaluations > 0);
    CHECK(b.classifier_evaluations == 0);
}

TEST_CASE("datasets resolve by name or by path") {
    CHECK(load_dataset({.name = "Wine"}).dataset.n_features == 13);
    const auto path = (default_descriptor_path().parent_path() / "wine.csv").string();
    DatasetRef ref{.name = path, .label_column = "class"};
    CHECK(load_dataset(ref).dataset.n_instances == 178);
    CHECK_THROWS_AS(load_dataset({.name = "no-such-set"}), DataError);
    CHECK_THROWS_AS(load_dataset({}), ConfigError);
}
