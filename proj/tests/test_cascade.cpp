#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "casrec/cascade.hpp"
#include "casrec/generators.hpp"
#include "test_support.hpp"

using namespace casrec;

TEST_CASE("assign_uniform_probs") {
    const ProbGraph g = gen_cycle(50000, 1.0); // 100k directed edges

    SUBCASE("fixed seed reproduces the assignment") {
        Rng r1(1), r2(1);
        const ProbGraph g1 = assign_uniform_probs(g, r1);
        const ProbGraph g2 = assign_uniform_probs(g, r2);
        const auto e1 = g1.edge_list(), e2 = g2.edge_list();
        bool same = true;
        for (std::size_t i = 0; i < e1.size(); ++i)
            same = same && e1[i].prob == e2[i].prob;
        CHECK(same);
    }
    SUBCASE("mean is one half and the range is respected") {
        Rng rng(2);
        const ProbGraph h = assign_uniform_probs(g, rng);
        double sum = 0.0;
        bool in_range = true;
        for (const GraphEdge& e : h.edge_list()) {
            sum += e.prob;
            in_range = in_range && e.prob > 0.0 && e.prob <= 1.0;
        }
        CHECK(in_range);
        CHECK(std::abs(sum / double(h.num_edges()) - 0.5) < 0.01);
    }
}

TEST_CASE("simulate_si forced cases") {
    const ProbGraph path = gen_path(6, 0.9);

    SUBCASE("beta 1 infects the whole path, tree equals the path") {
        Rng rng(3);
        const Cascade c = simulate_si(path, 1.0, 0, 1.0, rng);
        REQUIRE(c.infected().size() == 6);
        for (NodeId u = 1; u < 6; ++u)
            CHECK(c.tree.parent[u] == u - 1);
    }
    SUBCASE("beta 0 cannot reach more than the source") {
        Rng rng(4);
        CHECK_THROWS_AS(simulate_si(path, 0.0, 0, 0.5, rng), std::runtime_error);
        const Cascade c = simulate_si(path, 0.0, 2, 1.0 / 6.0, rng);
        CHECK(c.infected() == std::vector<NodeId>{2});
        CHECK(c.source == 2);
    }
    SUBCASE("tree invariant: edges = infected - 1, one parent each") {
        Rng rng(5);
        const Cascade c = simulate_si(path, 0.7, 1, 0.8, rng);
        CHECK(c.tree.edges().size() == c.infected().size() - 1);
        CHECK(std::binary_search(c.infected().begin(), c.infected().end(), c.source));
    }
}

TEST_CASE("simulate_si stops at the first round reaching the target") {
    const ProbGraph grid = gen_grid(8, 8, 0.5);
    Rng rng(6);
    const Cascade c = simulate_si(grid, 0.3, 0, 0.25, rng);
    CHECK(c.infected().size() >= 16); // 0.25 * 64
    // Overshoot is kept but bounded by one synchronous round.
    CHECK(c.infected().size() < 64);
}

TEST_CASE("monotonicity in the target fraction for a fixed seed") {
    const ProbGraph grid = gen_grid(8, 8, 0.5);
    // High beta so the epidemic never dies out and no retry reshuffles the
    // per-round randomness consumption.
    const Cascade small = [&] {
        Rng rng(7);
        return simulate_si(grid, 0.8, 10, 0.2, rng);
    }();
    const Cascade large = [&] {
        Rng rng(7);
        return simulate_si(grid, 0.8, 10, 0.6, rng);
    }();
    CHECK(std::includes(large.infected().begin(), large.infected().end(),
                        small.infected().begin(), small.infected().end()));
}

TEST_CASE("simulate_ic forced cases") {
    SUBCASE("certain transmission reaches every node") {
        const ProbGraph grid = gen_grid(5, 5, 1.0);
        Rng rng(8);
        const Cascade c = simulate_ic(grid, 12, 1.0, rng);
        CHECK(c.infected().size() == 25);
    }
    SUBCASE("fixed seed reproduces the cascade") {
        Rng rng(9);
        const ProbGraph g = assign_uniform_probs(gen_grid(6, 6, 1.0), rng);
        Rng r1(10), r2(10);
        const Cascade c1 = simulate_ic(g, 3, 0.4, r1);
        const Cascade c2 = simulate_ic(g, 3, 0.4, r2);
        CHECK(c1.infected() == c2.infected());
        CHECK(c1.tree.canonical_key() == c2.tree.canonical_key());
    }
    SUBCASE("dead frontier retries and eventually errors") {
        // Tiny probabilities, large target: the frontier dies essentially
        // always, exhausting the retry cap.
        const ProbGraph path = gen_path(8, 1e-9);
        Rng rng(11);
        CHECK_THROWS_AS(simulate_ic(path, 0, 0.9, rng, 20), std::runtime_error);
    }
}

TEST_CASE("observe") {
    const ProbGraph grid = gen_grid(6, 6, 0.5);
    Rng sim_rng(12);
    const Cascade c = simulate_si(grid, 0.6, 14, 0.5, sim_rng);
    const std::size_t infected = c.infected().size();

    SUBCASE("full observation returns every infected node") {
        Rng rng(13);
        const Observation o = observe(c, grid, 1.0, 0.0, rng);
        CHECK(o.observed_infected == c.infected());
        CHECK(o.observed_uninfected.empty());
    }
    SUBCASE("half observation rounds the subset size") {
        Rng rng(14);
        const Observation o = observe(c, grid, 0.5, 0.0, rng);
        CHECK(o.observed_infected.size() ==
              static_cast<std::size_t>(std::lround(0.5 * double(infected))));
        for (NodeId u : o.observed_infected)
            CHECK(std::binary_search(c.infected().begin(), c.infected().end(), u));
    }
    SUBCASE("a tiny fraction still reports at least one node") {
        Rng rng(15);
        const Observation o = observe(c, grid, 1e-6, 0.0, rng);
        CHECK(o.observed_infected.size() == 1);
    }
    SUBCASE("fixed seed reproduces the subset") {
        Rng r1(16), r2(16);
        CHECK(observe(c, grid, 0.4, 0.0, r1).observed_infected ==
              observe(c, grid, 0.4, 0.0, r2).observed_infected);
    }
    SUBCASE("uninfected nodes can be reported too") {
        Rng rng(17);
        const Observation o = observe(c, grid, 0.5, 0.5, rng);
        CHECK_FALSE(o.observed_uninfected.empty());
        for (NodeId u : o.observed_uninfected)
            CHECK_FALSE(std::binary_search(c.infected().begin(), c.infected().end(), u));
        const std::size_t uninfected = 36 - infected;
        CHECK(o.observed_uninfected.size() ==
              static_cast<std::size_t>(std::lround(0.5 * double(uninfected))));
    }
}
