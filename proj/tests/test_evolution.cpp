#include "doctest.h"

#include <numeric>

#include "support.hpp"
#include "tcbga/error.hpp"
#include "tcbga/evolution.hpp"
#include "tcbga/oracle.hpp"

using namespace tcbga;

namespace {

Individual ind(const char* bits, double f) { return Individual(Mask::from_string(bits), f); }

Mask random_mask(std::size_t n, Rng& rng) {
    Mask m(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) m.set(i);
    return m;
}

} // namespace

TEST_CASE("crossover worked example") {
    Rng rng(1);
    const auto a = Mask::from_string("1011001100");
    const auto b = Mask::from_string("0100110000");
    // Wrong popcounts: a has 5 features, b only 3, and a's prefix holds 2.
    const auto kids = count_preserving_crossover(a, b, 3, rng);
    REQUIRE(kids.has_value());
    CHECK(kids->first.to_string() == "0101101100");
    CHECK(kids->second.to_string() == "1010010000");
}

TEST_CASE("crossover on equal parents returns the parents") {
    Rng rng(2);
    const auto a = Mask::from_string("0110100");
    for (std::size_t cut = 0; cut <= 7; ++cut) {
        const auto kids = count_preserving_crossover(a, a, cut, rng);
        REQUIRE(kids);
        CHECK(kids->first == a);
        CHECK(kids->second == a);
    }
}

TEST_CASE("crossover needs enough features in the second parent") {
    Rng rng(3);
    CHECK_FALSE(count_preserving_crossover(Mask::from_string("1110"), Mask::from_string("1000"), 3, rng));
    CHECK_THROWS(count_preserving_crossover(Mask::from_string("11"), Mask::from_string("110"), 1, rng));
    CHECK_THROWS(count_preserving_crossover(Mask::from_string("11"), Mask::from_string("10"), 3, rng));
}

TEST_CASE("crossover preserves both popcounts over random calls") {
    Rng rng(4);
    std::size_t performed = 0;
    for (int call = 0; call < 10000; ++call) {
        const std::size_t n = 2 + rng() % 120;
        const auto a = random_mask(n, rng);
        const auto b = random_mask(n, rng);
        const std::size_t cut = rng() % (n + 1);
        const auto kids = count_preserving_crossover(a, b, cut, rng);
        if (!kids) {
            CHECK(b.count() < a.count_prefix(cut));
            continue;
        }
        ++performed;
        CHECK(kids->first.count() == a.count());
        CHECK(kids->second.count() == b.count());
    }
    CHECK(performed > 5000);
}

TEST_CASE("rank probabilities follow linear ranking") {
    std::vector<Individual> v{ind("1", 10.0), ind("1", 30.0), ind("1", 20.0), ind("1", 40.0)};
    const auto p = rank_probabilities(v, 1.8);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
    CHECK(p[3] == doctest::Approx(1.8 / 4));
    CHECK(p[0] == doctest::Approx(0.2 / 4));
    CHECK(p[1] > p[2]);
}

TEST_CASE("tied fitness shares the mean probability") {
    std::vector<Individual> v{ind("1", 5.0), ind("1", 5.0), ind("1", 9.0)};
    const auto p = rank_probabilities(v, 2.0);
    // With s = 2 rank r of n draws 2 (r - 1) / (n (n - 1)); ranks 1 and 2 share r = 1.5.
    CHECK(p[0] == doctest::Approx(p[1]));
    CHECK(p[0] == doctest::Approx(1.0 / 6.0));
    CHECK(p[2] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("rank selection always includes the elitist") {
    Rng rng(5);
    Tribe t;
    for (int i = 0; i < 50; ++i) t.individuals.push_back(ind("10", static_cast<double>(i % 7)));
    t.individuals[17].fitness = 99.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto picks = rank_selection(t, {}, rng);
        CHECK(picks.size() == 50);
        CHECK(std::find(picks.begin(), picks.end(), 17u) != picks.end());
    }
}

TEST_CASE("single-individual tribe selects itself") {
    Rng rng(6);
    Tribe t;
    t.individuals.push_back(ind("101", 1.0));
    CHECK(rank_selection(t, {}, rng) == std::vector<std::size_t>{0});
}

TEST_CASE("rank selection rejects missing fitness") {
    Rng rng(7);
    Tribe t;
    t.individuals.emplace_back(Mask::from_string("1"));
    CHECK_THROWS(rank_selection(t, {}, rng));
}

TEST_CASE("paired mutation keeps the histogram") {
    const auto plan = derive_plan(24, 600);
    const auto eval = test::synthetic_evaluator();
    auto pop = test::evaluated_population(plan, 8, eval);
    Rng rng(8);
    EvolutionConfig cfg;
    cfg.mutation_rate = 0.5;
    for (auto& t : pop.tribes) {
        const auto before = histogram(t, 24);
        const auto stats = paired_mutation(t, cfg, rng);
        CHECK(stats.applied > 100);
        CHECK(histogram(t, 24) == before);
        CHECK(brute_force_histogram(t, 24) == before);
    }
}

TEST_CASE("mutation without a partner class is cancelled") {
    Rng rng(9);
    Tribe t;
    // Every member selects 1 of 3 features: adding needs class 2 (empty),
    // dropping needs class 0 (not allowed).
    for (const char* b : {"100", "010", "001", "100"}) t.individuals.push_back(ind(b, 1.0));
    EvolutionConfig cfg;
    cfg.mutation_rate = 1.0;
    const auto before = t.individuals;
    const auto stats = paired_mutation(t, cfg, rng);
    CHECK(stats.applied == 0);
    CHECK(stats.cancelled == 4);
    CHECK(t.individuals == before);
}

TEST_CASE("evolve_generation keeps the histogram and evaluates everyone") {
    const auto plan = derive_plan(30, 600);
    const auto eval = test::synthetic_evaluator();
    auto pop = test::evaluated_population(plan, 10, eval);
    Rng rng(10);
    for (int g = 0; g < 5; ++g) {
        for (auto& t : pop.tribes) {
            const auto before = histogram(t, 30);
            const auto stats = evolve_generation(t, {}, eval, rng);
            CHECK(stats.crossovers > 0);
            CHECK(histogram(t, 30) == before);
            CHECK(t.size() == 600);
            for (const auto& i : t.individuals) CHECK(i.fitness.has_value());
        }
    }
}

TEST_CASE("elitist fitness never drops over 200 generations") {
    const auto plan = derive_plan(20, 600);
    const auto eval = test::synthetic_evaluator(4);
    auto pop = test::evaluated_population(plan, 11, eval);
    Rng rng(11);
    std::vector<double> best;
    for (const auto& t : pop.tribes) best.push_back(*best_individual(t).fitness);
    for (int g = 0; g < 200; ++g) {
        for (std::size_t k = 0; k < pop.tribes.size(); ++k) {
            evolve_generation(pop.tribes[k], {}, eval, rng);
            const double now = *best_individual(pop.tribes[k]).fitness;
            CHECK(now >= best[k]);
            best[k] = now;
        }
    }
    // The tribe centred nearest 4 features finds the optimum.
    CHECK(best[0] == doctest::Approx(test::synthetic_fitness(Mask::from_string("11110000000000000000"), 4)));
}

TEST_CASE("evolve_generation is reproducible") {
    const auto plan = derive_plan(15, 600);
    const auto eval = test::synthetic_evaluator();
    auto a = test::evaluated_population(plan, 12, eval);
    auto b = a;
    Rng ra(99);
    Rng rb(99);
    evolve_generation(a.tribes[1], {}, eval, ra);
    evolve_generation(b.tribes[1], {}, eval, rb);
    CHECK(a.tribes[1].individuals == b.tribes[1].individuals);
}

TEST_CASE("evolution config ranges") {
    EvolutionConfig c;
    c.validate();
    c.crossover_rate = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.selection_pressure = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.mutation_rate = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
