#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "casrec/generators.hpp"
#include "casrec/inference.hpp"
#include "casrec/oracle.hpp"
#include "casrec/pagerank.hpp"
#include "test_support.hpp"

using namespace casrec;
using test::g3;

namespace {

// All-pairs -log p shortest paths by Floyd-Warshall; independent of the
// Dijkstra used inside root_min_dist.
std::vector<std::vector<double>> all_pairs(const ProbGraph& g) {
    const NodeId n = g.num_nodes();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (NodeId u = 0; u < n; ++u)
        d[u][u] = 0.0;
    for (const GraphEdge& e : g.edge_list())
        d[e.from][e.to] = -std::log(e.prob);
    for (NodeId k = 0; k < n; ++k)
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Dense solve of the personalized PageRank fixed point:
// (I - damping * P^T) x = (1 - damping) * e.
std::vector<double> pagerank_by_solve(const ProbGraph& g,
                                      const std::vector<double>& pers,
                                      double damping) {
    const NodeId n = g.num_nodes();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (NodeId u = 0; u < n; ++u) {
        double total = 0.0;
        for (double p : g.out_probs(u))
            total += p;
        const auto nbrs = g.out_neighbors(u);
        const auto probs = g.out_probs(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            P(u, nbrs[i]) = probs[i] / total;
    }
    Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(n, n) - damping * P.transpose();
    Eigen::VectorXd e(n);
    for (NodeId u = 0; u < n; ++u)
        e(u) = (1.0 - damping) * pers[u];
    const Eigen::VectorXd x = A.partialPivLu().solve(e);
    return {x.data(), x.data() + n};
}

} // namespace

TEST_CASE("root_min_dist") {
    SUBCASE("middle of a 3-path with equal probabilities") {
        const ProbGraph g = gen_path(3, 0.5);
        const std::vector<NodeId> X{0, 2};
        CHECK(root_min_dist(g, X) == 1);
    }
    SUBCASE("singleton terminal is its own centroid") {
        const ProbGraph g = gen_path(4, 0.5);
        const std::vector<NodeId> X{2};
        CHECK(root_min_dist(g, X) == 2);
    }
    SUBCASE("matches exhaustive shortest-path sums on the 3-node graph") {
        const ProbGraph g = g3();
        const std::vector<NodeId> X{g.node_by_label("a"), g.node_by_label("c")};
        const auto d = all_pairs(g);
        NodeId best = -1;
        double best_sum = std::numeric_limits<double>::infinity();
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            const double s = d[v][X[0]] + d[v][X[1]];
            if (s < best_sum) {
                best_sum = s;
                best = v;
            }
        }
        CHECK(root_min_dist(g, X) == best);
        CHECK(best == g.node_by_label("b"));
    }
    SUBCASE("matches exhaustive sums on random graphs") {
        Rng rng(41);
        for (int it = 0; it < 20; ++it) {
            const int n = 4 + static_cast<int>(rng.next_below(4));
            const ProbGraph g = test::random_reciprocal_graph(n, 0.3, rng);
            std::vector<NodeId> X;
            for (NodeId u = 0; u < n; ++u)
                if (rng.next_double() < 0.4)
                    X.push_back(u);
            if (X.empty())
                X.push_back(0);
            const auto d = all_pairs(g);
            NodeId best = -1;
            double best_sum = std::numeric_limits<double>::infinity();
            for (NodeId v = 0; v < n; ++v) {
                double s = 0.0;
                for (NodeId x : X)
                    s += d[v][x];
                if (s < best_sum) {
                    best_sum = s;
                    best = v;
                }
            }
            CHECK(root_min_dist(g, X) == best);
        }
    }
    SUBCASE("unreachable terminals are an error") {
        ProbGraph g(4, {{0, 1, 0.5}, {1, 0, 0.5}, {2, 3, 0.5}, {3, 2, 0.5}},
                    {"a", "b", "c", "d"});
        const std::vector<NodeId> X{0, 2};
        CHECK_THROWS_AS(root_min_dist(g, X), std::runtime_error);
    }
}

TEST_CASE("root_pagerank") {
    SUBCASE("vertex-transitive graph with everything observed ties to node 0") {
        const ProbGraph g = gen_cycle(5, 0.5);
        Observation o;
        for (NodeId u = 0; u < 5; ++u)
            o.observed_infected.push_back(u);
        CHECK(root_pagerank(g, o) == 0);
    }
    SUBCASE("damping 0 reduces to the personalization vector") {
        const ProbGraph g = gen_path(5, 0.5);
        Observation o;
        o.observed_infected = {3};
        CHECK(root_pagerank(g, o, 0.0) == 3);
    }
    SUBCASE("scores match a dense linear solve on the 3-node graph") {
        const ProbGraph g = g3();
        Observation o;
        o.observed_infected = {g.node_by_label("c")};
        std::vector<double> pers(g.num_nodes(), 0.0);
        pers[o.observed_infected[0]] = 1.0;
        const auto iterated = personalized_pagerank(g, pers);
        const auto solved = pagerank_by_solve(g, pers, kPageRankDamping);
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            CHECK(std::abs(iterated[u] - solved[u]) < 1e-8);
    }
    SUBCASE("observed-uninfected nodes are excluded from the argmax") {
        const ProbGraph g = gen_path(3, 0.5);
        Observation o;
        o.observed_infected = {1};
        o.observed_uninfected = {0};
        const NodeId r = root_pagerank(g, o);
        CHECK(r != 0);
    }
}

TEST_CASE("estimate_marginals") {
    const ProbGraph g = g3();
    const NodeId a = g.node_by_label("a"), b = g.node_by_label("b"),
                 c = g.node_by_label("c");
    std::vector<NodeId> parent(3, Tree::kNoParent);
    parent[c] = b;
    parent[b] = a;
    const Tree path = make_tree(3, a, {a, b, c}, parent);
    const Tree root_only = make_tree(3, a, {a}, std::vector<NodeId>(3, Tree::kNoParent));

    SUBCASE("single tree gives indicator marginals") {
        Observation o;
        o.observed_infected = {c};
        const std::vector<Tree> trees{path};
        const MarginalEstimate est = estimate_marginals(trees, g, o);
        CHECK(est.node_prob.at(a) == 1.0);
        CHECK(est.node_prob.at(b) == 1.0);
        CHECK_FALSE(est.node_prob.count(c)); // observed nodes are not stored
        CHECK(est.edge_prob.at({a, b}) == 1.0);
        CHECK(est.edge_prob.at({b, c}) == 1.0);
    }
    SUBCASE("counts average over the tree multiset") {
        Observation o;
        o.observed_infected = {c};
        const std::vector<Tree> trees{path, root_only, root_only, root_only};
        const MarginalEstimate est = estimate_marginals(trees, g, o);
        CHECK(est.node_prob.at(a) == 1.0); // the root is in every tree
        CHECK(est.node_prob.at(b) == doctest::Approx(0.25));
        CHECK(est.edge_prob.at({b, c}) == doctest::Approx(0.25));
    }
    SUBCASE("mixed roots are rejected") {
        const Tree other = make_tree(3, b, {b}, std::vector<NodeId>(3, Tree::kNoParent));
        const std::vector<Tree> trees{path, other};
        Observation o;
        o.observed_infected = {c};
        CHECK_THROWS_AS(estimate_marginals(trees, g, o), std::invalid_argument);
    }
}

TEST_CASE("reconstruct on the unique-tree instance") {
    const ProbGraph g = g3();
    const NodeId a = g.node_by_label("a"), b = g.node_by_label("b"),
                 c = g.node_by_label("c");
    Observation o;
    o.observed_infected = {c};

    ReconConfig cfg;
    cfg.sampler = SamplerKind::kLerw;
    cfg.n_samples = 64;
    cfg.resample = true;
    cfg.root_strategy = RootStrategy::kGiven;
    cfg.given_root = a;
    cfg.seed = 11;

    const MarginalEstimate est = reconstruct(g, o, cfg);
    CHECK(est.root == a);
    CHECK(est.node_prob.at(a) == 1.0);
    CHECK(est.node_prob.at(b) == 1.0);
    CHECK(est.edge_prob.at({a, b}) == 1.0);
    CHECK(est.edge_prob.at({b, c}) == 1.0);
}

TEST_CASE("reconstruct propagates restriction errors") {
    const ProbGraph path = gen_path(3, 0.5); // 0 - 1 - 2
    Observation o;
    o.observed_infected = {2};
    o.observed_uninfected = {1}; // cuts 2 off from the rest
    ReconConfig cfg;
    cfg.root_strategy = RootStrategy::kMinDist;
    cfg.n_samples = 10;
    CHECK_THROWS(reconstruct(path, o, cfg));

    SUBCASE("observing a node both ways is rejected") {
        Observation bad;
        bad.observed_infected = {1};
        bad.observed_uninfected = {1};
        CHECK_THROWS_AS(reconstruct(path, bad, cfg), std::invalid_argument);
    }
    SUBCASE("a root that was observed uninfected is rejected") {
        Observation obs;
        obs.observed_infected = {2};
        obs.observed_uninfected = {0};
        ReconConfig given = cfg;
        given.root_strategy = RootStrategy::kGiven;
        given.given_root = 0;
        CHECK_THROWS_AS(reconstruct(path, obs, given), std::invalid_argument);
    }
}

TEST_CASE("reconstruct marginals converge to the exact conditionals") {
    // 6-node instance; exact conditionals come from enumerating every
    // Steiner tree through the chosen root with its target weight.
    Rng grng(55);
    const ProbGraph g = test::random_reciprocal_graph(6, 0.35, grng, 0.3, 0.9);
    const MarkovChain chain = build_chain(g);
    const NodeId root = 0;
    const std::vector<NodeId> X{3, 5};

    const auto proposal = oracle::enumerate_steiner_trees(chain, root, X);
    const auto target = oracle::reweight_to_target(proposal, g);
    std::vector<double> exact_node(g.num_nodes(), 0.0);
    for (std::size_t i = 0; i < target.size(); ++i)
        for (NodeId u : target.support[i].nodes)
            exact_node[u] += target.mass[i];

    Observation o;
    o.observed_infected = X;
    ReconConfig cfg;
    cfg.sampler = SamplerKind::kLerw;
    cfg.n_samples = 100000;
    cfg.resample = true;
    cfg.root_strategy = RootStrategy::kGiven;
    cfg.given_root = root;
    cfg.seed = 77;

    const MarginalEstimate est = reconstruct(g, o, cfg);
    for (const auto& [u, p] : est.node_prob)
        CHECK(std::abs(p - exact_node[u]) < 0.02);

    SUBCASE("weighted averaging agrees without resampling noise") {
        ReconConfig wcfg = cfg;
        wcfg.weighted_average = true;
        wcfg.n_samples = 100000;
        const MarginalEstimate west = reconstruct(g, o, wcfg);
        for (const auto& [u, p] : west.node_prob)
            CHECK(std::abs(p - exact_node[u]) < 0.02);
    }
}

TEST_CASE("reconstruct is reproducible and worker partitioning is stable") {
    const ProbGraph g = gen_grid(5, 5, 0.5);
    Rng sim(66);
    Observation o;
    o.observed_infected = {0, 7, 12, 18};

    ReconConfig cfg;
    cfg.sampler = SamplerKind::kTrim;
    cfg.n_samples = 400;
    cfg.root_strategy = RootStrategy::kMinDist;
    cfg.seed = 123;

    const MarginalEstimate e1 = reconstruct(g, o, cfg);
    const MarginalEstimate e2 = reconstruct(g, o, cfg);
    CHECK(e1.root == e2.root);
    CHECK(e1.node_prob == e2.node_prob);
    CHECK(e1.edge_prob == e2.edge_prob);

    ReconConfig par = cfg;
    par.workers = 3;
    const MarginalEstimate e3 = reconstruct(g, o, par);
    const MarginalEstimate e4 = reconstruct(g, o, par);
    CHECK(e3.node_prob == e4.node_prob);
}
