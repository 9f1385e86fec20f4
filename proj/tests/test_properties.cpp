#include "doctest.h"

#include "support.hpp"
#include "tcbga/competition.hpp"
#include "tcbga/evolution.hpp"
#include "tcbga/oracle.hpp"

using namespace tcbga;

namespace {

struct Scenario {
    std::size_t n_features;
    std::size_t tribe_size;
    std::size_t relevant;
    std::size_t award;
    std::size_t interval;
    std::uint64_t seed;
};

// Checks every invariant of a live population; returns the number of failures.
std::size_t check_population(const Population& pop, const TribePlan& plan, std::size_t floor) {
    std::size_t failures = 0;
    auto expect = [&](bool ok) { failures += ok ? 0 : 1; };
    expect(pop.total_size() == plan.population());
    expect(pop.tribes.size() == plan.n_tribes);
    for (const auto& t : pop.tribes) {
        expect(t.size() >= std::min(floor, plan.tribe_size));
        const auto h = histogram(t, plan.n_features);
        expect(h == brute_force_histogram(t, plan.n_features));
        expect(h == allocate_counts(plan.n_features, t.mu, t.sigma, t.size()).counts);
        for (const auto& ind : t.individuals) {
            expect(ind.mask.size() == plan.n_features);
            expect(ind.mask.count() >= 1);
            expect(ind.fitness.has_value());
            if (ind.fitness) expect(*ind.fitness == test::synthetic_fitness(ind.mask, 3));
        }
    }
    return failures;
}

} // namespace

TEST_CASE("long runs keep every invariant") {
    // 4 scenarios x 150 generations = 600 generations; 150 competitions.
    const std::vector<Scenario> scenarios{
        {12, 80, 3, 1, 3, 1}, {20, 120, 3, 2, 4, 2}, {9, 60, 3, 1, 5, 3}, {30, 100, 3, 3, 4, 4}};
    std::size_t generations = 0;
    std::size_t competitions = 0;
    std::size_t moves = 0;
    for (const auto& s : scenarios) {
        CAPTURE(s.n_features);
        auto plan = derive_plan(s.n_features, s.tribe_size);
        plan.allow_infeasible = true;
        const auto eval = test::synthetic_evaluator(s.relevant);
        auto pop = test::evaluated_population(plan, s.seed, eval);
        EvolutionConfig evo;
        CompetitionConfig comp;
        comp.award = comp.penalty = s.award;
        comp.min_tribe_size = s.tribe_size / 2;
        std::vector<Rng> rngs;
        for (std::size_t k = 0; k < plan.n_tribes; ++k) rngs.emplace_back(s.seed * 100 + k);
        Rng comp_rng(s.seed * 7);

        REQUIRE(check_population(pop, plan, comp.min_tribe_size) == 0);
        for (std::size_t g = 1; g <= 150; ++g) {
            std::vector<double> elite;
            for (const auto& t : pop.tribes) elite.push_back(*best_individual(t).fitness);
            for (std::size_t k = 0; k < plan.n_tribes; ++k) {
                const auto before = histogram(pop.tribes[k], plan.n_features);
                evolve_generation(pop.tribes[k], evo, eval, rngs[k]);
                CHECK(histogram(pop.tribes[k], plan.n_features) == before);
            }
            ++generations;
            if (g % s.interval == 0) {
                const auto sizes = pop.tribe_sizes();
                const auto rec = apply_competition(pop, comp, eval, comp_rng);
                ++competitions;
                CHECK(rec.sizes == pop.tribe_sizes());
                if (rec.winner && rec.loser) {
                    ++moves;
                    CHECK(pop.tribes[*rec.winner].size() == sizes[*rec.winner] + s.award);
                    CHECK(pop.tribes[*rec.loser].size() == sizes[*rec.loser] - s.award);
                } else {
                    CHECK(pop.tribe_sizes() == sizes);
                }
            }
            for (std::size_t k = 0; k < plan.n_tribes; ++k) CHECK(*best_individual(pop.tribes[k]).fitness >= elite[k]);
            CHECK(check_population(pop, plan, comp.min_tribe_size) == 0);
        }
    }
    CHECK(generations >= 500);
    CHECK(competitions >= 100);
    CHECK(moves >= 50);
}

TEST_CASE("the elitist reaches the synthetic optimum") {
    // Features 0..2 are worth 20 each; all others only cost. Optimum 111000...
    auto plan = derive_plan(12, 80);
    plan.allow_infeasible = true;
    const auto eval = test::synthetic_evaluator(3);
    auto pop = test::evaluated_population(plan, 9, eval);
    EvolutionConfig evo;
    std::vector<Rng> rngs;
    for (std::size_t k = 0; k < plan.n_tribes; ++k) rngs.emplace_back(900 + k);
    for (int g = 0; g < 60; ++g)
        for (std::size_t k = 0; k < plan.n_tribes; ++k) evolve_generation(pop.tribes[k], evo, eval, rngs[k]);
    const auto oracle = exhaustive_best_subset(12, [](const Mask& m) { return test::synthetic_fitness(m, 3); });
    double best = 0.0;
    for (const auto& t : pop.tribes) best = std::max(best, *best_individual(t).fitness);
    CHECK(oracle.best_mask.to_string() == "111000000000");
    CHECK(best == oracle.best_accuracy);
}
