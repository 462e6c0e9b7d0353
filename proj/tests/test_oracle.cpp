#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casrec/generators.hpp"
#include "casrec/laplacian.hpp"
#include "casrec/oracle.hpp"
#include "casrec/sampling.hpp"
#include "test_support.hpp"

using namespace casrec;
using namespace casrec::oracle;
using test::g3;

TEST_CASE("enumerate_in_trees on the 3-node graph") {
    const ProbGraph g = g3();
    const MarkovChain chain = build_chain(g);
    const NodeId a = g.node_by_label("a"), c = g.node_by_label("c");

    // Hand enumeration: a single in-tree toward a, {b->a, c->b}, weight
    // (2/3)*1, and a single in-tree toward c, {a->b, b->c}, weight 1*(1/3).
    const ExactDistribution to_a = enumerate_in_trees(chain, a);
    REQUIRE(to_a.size() == 1);
    CHECK(to_a.total_weight == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(to_a.mass[0] == doctest::Approx(1.0));

    const ExactDistribution to_c = enumerate_in_trees(chain, c);
    REQUIRE(to_c.size() == 1);
    CHECK(to_c.total_weight == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("enumerate_in_trees counts 3 trees on the complete 3-node graph") {
    const ProbGraph g = gen_complete(3, 0.5);
    const MarkovChain chain = build_chain(g); // every weight 1/2
    const ExactDistribution dist = enumerate_in_trees(chain, 0);
    REQUIRE(dist.size() == 3); // n^(n-2) = 3
    for (double m : dist.mass)
        CHECK(m == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("enumerate_in_trees on a 2-node chain") {
    const ProbGraph g = gen_path(2, 0.7);
    const ExactDistribution dist = enumerate_in_trees(build_chain(g), 0);
    REQUIRE(dist.size() == 1);
    CHECK(dist.total_weight == doctest::Approx(1.0));
}

TEST_CASE("enumeration cap is a hard error") {
    const ProbGraph g = gen_cycle(9, 0.5);
    CHECK_THROWS_AS(enumerate_in_trees(build_chain(g), 0), std::invalid_argument);
}

TEST_CASE("enumerate_steiner_trees finds the unique path in the 3-node graph") {
    const ProbGraph g = g3();
    const MarkovChain chain = build_chain(g);
    const NodeId a = g.node_by_label("a"), b = g.node_by_label("b"),
                 c = g.node_by_label("c");
    const std::vector<NodeId> X{c};
    const ExactDistribution dist = enumerate_steiner_trees(chain, a, X);
    REQUIRE(dist.size() == 1);
    const Tree& t = dist.support[0];
    CHECK(t.parent[c] == b);
    CHECK(t.parent[b] == a);
    CHECK(t.nodes.size() == 3);
}

TEST_CASE("enumerate_steiner_trees finds both arcs of the 4-cycle") {
    const ProbGraph g = test::four_cycle();
    const MarkovChain chain = build_chain(g);
    const NodeId a = g.node_by_label("a"), c = g.node_by_label("c");
    const std::vector<NodeId> X{c};
    const ExactDistribution dist = enumerate_steiner_trees(chain, a, X);
    REQUIRE(dist.size() == 2);
    // Equal probabilities make the two arc paths equally likely.
    CHECK(dist.mass[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.mass[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Steiner enumeration with X = V matches spanning enumeration") {
    Rng rng(5);
    const ProbGraph g = test::random_reciprocal_graph(5, 0.4, rng);
    const MarkovChain chain = build_chain(g);
    std::vector<NodeId> all;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        all.push_back(u);
    const ExactDistribution spanning = enumerate_in_trees(chain, 2);
    const ExactDistribution steiner = enumerate_steiner_trees(chain, 2, all);
    REQUIRE(spanning.size() == steiner.size());
    for (std::size_t i = 0; i < spanning.size(); ++i) {
        CHECK(spanning.support[i].canonical_key() == steiner.support[i].canonical_key());
        CHECK(spanning.mass[i] == doctest::Approx(steiner.mass[i]).epsilon(1e-12));
    }
}

TEST_CASE("single-terminal Steiner trees are simple paths") {
    Rng rng(17);
    const ProbGraph g = test::random_reciprocal_graph(6, 0.3, rng);
    const MarkovChain chain = build_chain(g);
    for (NodeId x = 1; x < g.num_nodes(); ++x) {
        const std::vector<NodeId> X{x};
        const ExactDistribution dist = enumerate_steiner_trees(chain, 0, X);
        for (const Tree& t : dist.support) {
            std::vector<int> children(g.num_nodes(), 0);
            for (NodeId u : t.nodes)
                if (u != t.root)
                    ++children[t.parent[u]];
            for (NodeId u : t.nodes)
                CHECK(children[u] <= 1);
        }
    }
}

TEST_CASE("tv_distance basics") {
    const ProbGraph g = test::four_cycle();
    const MarkovChain chain = build_chain(g);
    const std::vector<NodeId> X{g.node_by_label("c")};
    const ExactDistribution dist =
        enumerate_steiner_trees(chain, g.node_by_label("a"), X);

    SUBCASE("identical distributions give 0") {
        test::Counts counts;
        counts[dist.support[0].canonical_key()] = 500;
        counts[dist.support[1].canonical_key()] = 500;
        CHECK(tv_distance(counts, dist) == doctest::Approx(0.0));
    }
    SUBCASE("disjoint supports give 1") {
        test::Counts counts;
        counts["nonsense-key"] = 1000;
        CHECK(tv_distance(counts, dist) == doctest::Approx(1.0));
    }
    SUBCASE("empirical draws from the exact distribution concentrate") {
        Rng rng(42);
        test::Counts counts;
        for (int i = 0; i < 100000; ++i) {
            const double u = rng.next_double();
            double acc = 0.0;
            for (std::size_t k = 0; k < dist.size(); ++k) {
                acc += dist.mass[k];
                if (u < acc || k + 1 == dist.size()) {
                    ++counts[dist.support[k].canonical_key()];
                    break;
                }
            }
        }
        CHECK(tv_distance(counts, dist) < 0.01);
    }
}

TEST_CASE("two-sample tv_distance") {
    test::Counts a, b;
    a["x"] = 50;
    a["y"] = 50;
    b["x"] = 50;
    b["y"] = 50;
    CHECK(oracle::tv_distance(a, b) == doctest::Approx(0.0));
    b.clear();
    b["z"] = 100;
    CHECK(oracle::tv_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("in-tree weight sums match the Laplacian determinant") {
    Rng rng(31);
    for (int it = 0; it < 30; ++it) {
        const int n = 4 + static_cast<int>(rng.next_below(4));
        const ProbGraph g = test::random_reciprocal_graph(n, 0.4, rng);
        const MarkovChain chain = build_chain(g);
        std::vector<GraphEdge> edges;
        for (NodeId u = 0; u < n; ++u) {
            const auto succ = chain.successors(u);
            const auto w = chain.weights(u);
            for (std::size_t i = 0; i < succ.size(); ++i)
                edges.push_back({u, succ[i], w[i]});
        }
        for (NodeId r = 0; r < n; ++r) {
            const double brute = enumerate_in_trees(chain, r).total_weight;
            const double viaDet = std::exp(laplacian_minor_logdet(n, edges, r));
            CHECK(std::abs(viaDet - brute) <= 1e-9 * std::max(1.0, std::abs(brute)));
        }
    }
}
