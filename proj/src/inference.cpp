#include "casrec/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "casrec/cycle_popping.hpp"
#include "casrec/pagerank.hpp"
#include "casrec/sampling.hpp"

namespace casrec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-path distances from every node TO `target`, along directed
// edges weighted -log p: Dijkstra on the reverse adjacency.
std::vector<double> distances_to(const ProbGraph& g, NodeId target) {
    std::vector<double> dist(g.num_nodes(), kInf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[target] = 0.0;
    heap.emplace(0.0, target);
    while (!heap.empty()) {
        const auto [d, w] = heap.top();
        heap.pop();
        if (d > dist[w])
            continue;
        const auto in_nbrs = g.in_neighbors(w);
        const auto in_probs = g.in_probs(w);
        for (std::size_t i = 0; i < in_nbrs.size(); ++i) {
            const double nd = d - std::log(in_probs[i]);
            if (nd < dist[in_nbrs[i]]) {
                dist[in_nbrs[i]] = nd;
                heap.emplace(nd, in_nbrs[i]);
            }
        }
    }
    return dist;
}

// restrict_graph assigns new ids to surviving nodes in ascending order of
// the old ids; reproduce that mapping. Removed nodes map to -1.
std::vector<NodeId> restriction_map(NodeId n, const std::unordered_set<NodeId>& removed) {
    std::vector<NodeId> map(n, -1);
    NodeId next = 0;
    for (NodeId u = 0; u < n; ++u)
        if (!removed.count(u))
            map[u] = next++;
    return map;
}

struct SampleBatch {
    std::vector<Tree> trees;
    std::vector<double> biases; // aligned with trees for the trim sampler
};

SampleBatch draw_samples(const MarkovChain& chain, NodeId root,
                         std::span<const NodeId> terminals, const ReconConfig& cfg) {
    const int total = cfg.n_samples;
    const int workers = std::max(1, cfg.workers);
    std::vector<SampleBatch> parts(workers);

    const auto run_worker = [&](int w) {
        const int base = total / workers;
        const int count = base + (w < total % workers ? 1 : 0);
        Rng rng(derive_seed(cfg.seed, 101 + static_cast<std::uint64_t>(w)));
        SampleBatch& batch = parts[w];
        batch.trees.reserve(count);
        for (int i = 0; i < count; ++i) {
            if (cfg.sampler == SamplerKind::kLerw) {
                // The walk sampler carries the same contraction bias as the
                // trim sampler; compute it so resampling can remove it.
                Tree t = lerw_steiner(chain, root, terminals, rng);
                batch.biases.push_back(trim_bias(chain, t));
                batch.trees.push_back(std::move(t));
            } else {
                TrimSample s = trim_steiner(chain, root, terminals, rng);
                batch.trees.push_back(std::move(s.tree));
                batch.biases.push_back(s.log_bias);
            }
        }
    };

    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(run_worker, w);
        for (auto& t : threads)
            t.join();
    }

    SampleBatch all;
    all.trees.reserve(total);
    for (SampleBatch& p : parts) {
        std::move(p.trees.begin(), p.trees.end(), std::back_inserter(all.trees));
        all.biases.insert(all.biases.end(), p.biases.begin(), p.biases.end());
    }
    return all;
}

MarginalEstimate count_marginals(std::span<const Tree> trees,
                                 std::span<const double> tree_weights,
                                 const ProbGraph& g, const Observation& o) {
    if (trees.empty())
        throw std::invalid_argument("estimate_marginals: no trees");
    const NodeId root = trees.front().root;
    for (const Tree& t : trees)
        if (t.root != root)
            throw std::invalid_argument("estimate_marginals: mixed roots");

    std::vector<double> node_mass(g.num_nodes(), 0.0);
    std::map<std::pair<NodeId, NodeId>, double> edge_mass;
    double total = 0.0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const double w = tree_weights.empty() ? 1.0 : tree_weights[i];
        total += w;
        for (NodeId u : trees[i].nodes) {
            node_mass[u] += w;
            if (u != root)
                edge_mass[{trees[i].parent[u], u}] += w;
        }
    }
    if (!(total > 0.0))
        throw std::domain_error("estimate_marginals: zero total weight");

    std::vector<char> observed(g.num_nodes(), 0);
    for (NodeId u : o.observed_infected)
        observed[u] = 1;
    for (NodeId u : o.observed_uninfected)
        observed[u] = 1;

    MarginalEstimate est;
    est.root = root;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (!observed[u])
            est.node_prob[u] = node_mass[u] / total;
    for (auto& [edge, mass] : edge_mass)
        est.edge_prob[edge] = mass / total;
    return est;
}

} // namespace

NodeId root_min_dist(const ProbGraph& g, std::span<const NodeId> terminals) {
    if (terminals.empty())
        throw std::invalid_argument("root_min_dist: empty terminal set");
    std::vector<double> sum(g.num_nodes(), 0.0);
    for (NodeId x : terminals) {
        if (x < 0 || x >= g.num_nodes())
            throw std::invalid_argument("root_min_dist: terminal out of range");
        const auto dist = distances_to(g, x);
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            sum[v] += dist[v];
    }
    NodeId best = -1;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (std::isfinite(sum[v]) && (best < 0 || sum[v] < sum[best]))
            best = v;
    if (best < 0)
        throw std::runtime_error("root_min_dist: no node reaches every terminal");
    return best;
}

NodeId root_pagerank(const ProbGraph& g, const Observation& o, double damping) {
    const std::size_t observed =
        o.observed_infected.size() + o.observed_uninfected.size();
    if (observed == 0)
        throw std::invalid_argument("root_pagerank: empty observation");

    std::vector<double> personalization(g.num_nodes(), 0.0);
    const double share = 1.0 / static_cast<double>(observed);
    for (NodeId u : o.observed_infected)
        personalization[u] = share;
    for (NodeId u : o.observed_uninfected)
        personalization[u] = share;

    const auto scores = personalized_pagerank(g, personalization, damping);

    std::vector<char> excluded(g.num_nodes(), 0);
    for (NodeId u : o.observed_uninfected)
        excluded[u] = 1;
    NodeId best = -1;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (!excluded[v] && (best < 0 || scores[v] > scores[best]))
            best = v;
    return best;
}

MarginalEstimate estimate_marginals(std::span<const Tree> trees,
                                    const ProbGraph& g, const Observation& o) {
    return count_marginals(trees, {}, g, o);
}

MarginalEstimate reconstruct(const ProbGraph& g, const Observation& o,
                             const ReconConfig& cfg) {
    if (o.observed_infected.empty())
        throw std::invalid_argument("reconstruct: no observed infected nodes");
    if (cfg.n_samples < 1)
        throw std::invalid_argument("reconstruct: sample count must be positive");
    std::unordered_set<NodeId> removed(o.observed_uninfected.begin(),
                                       o.observed_uninfected.end());
    for (NodeId x : o.observed_infected)
        if (removed.count(x))
            throw std::invalid_argument(
                "reconstruct: node " + g.label(x) +
                " observed both infected and uninfected");

    // Stage 1: drop reported-uninfected nodes.
    const ProbGraph sub = restrict_graph(g, removed);
    const std::vector<NodeId> to_sub = restriction_map(g.num_nodes(), removed);
    std::vector<NodeId> terminals_sub;
    terminals_sub.reserve(o.observed_infected.size());
    for (NodeId x : o.observed_infected)
        terminals_sub.push_back(to_sub[x]);

    // Stage 2: pick the root on the restricted graph.
    NodeId root_sub = -1;
    switch (cfg.root_strategy) {
    case RootStrategy::kMinDist:
        root_sub = root_min_dist(sub, terminals_sub);
        break;
    case RootStrategy::kPageRank:
        root_sub = root_pagerank(sub, Observation{terminals_sub, {}});
        break;
    case RootStrategy::kGiven:
    case RootStrategy::kTrueRoot: {
        const NodeId orig = cfg.root_strategy == RootStrategy::kGiven
                                ? cfg.given_root
                                : cfg.true_root;
        if (orig < 0 || orig >= g.num_nodes())
            throw std::invalid_argument("reconstruct: root id out of range");
        if (to_sub[orig] < 0)
            throw std::invalid_argument("reconstruct: requested root " +
                                        g.label(orig) +
                                        " was observed uninfected");
        root_sub = to_sub[orig];
        break;
    }
    }

    // Stage 3: the samplers need the root and all terminals in one
    // (strongly) connected component; reciprocity makes components of the
    // undirected view strongly connected.
    int n_comp = 0;
    const std::vector<int> comp = connected_components(sub, n_comp);
    const int keep_comp = comp[root_sub];
    for (std::size_t i = 0; i < terminals_sub.size(); ++i)
        if (comp[terminals_sub[i]] != keep_comp)
            throw std::runtime_error(
                "reconstruct: root cannot reach terminal " +
                std::string(sub.label(terminals_sub[i])) +
                " after restriction");
    std::unordered_set<NodeId> outside;
    for (NodeId u = 0; u < sub.num_nodes(); ++u)
        if (comp[u] != keep_comp)
            outside.insert(u);

    const ProbGraph core = outside.empty() ? sub : restrict_graph(sub, outside);
    const std::vector<NodeId> to_core = restriction_map(sub.num_nodes(), outside);
    std::vector<NodeId> terminals;
    terminals.reserve(terminals_sub.size());
    for (NodeId x : terminals_sub)
        terminals.push_back(to_core[x]);
    const NodeId root = to_core[root_sub];

    // Stage 4: sample, correct, estimate.
    const MarkovChain chain = build_chain(core);
    SampleBatch batch = draw_samples(chain, root, terminals, cfg);

    std::vector<WeightedSample> weighted =
        attach_trim_weights(core, chain, std::move(batch.trees), batch.biases);

    MarginalEstimate core_est;
    const Observation core_obs{terminals, {}};
    if (cfg.weighted_average) {
        std::vector<Tree> trees;
        std::vector<double> weights;
        trees.reserve(weighted.size());
        double max_log = -kInf;
        for (const WeightedSample& s : weighted)
            max_log = std::max(max_log, s.log_sir_weight);
        for (WeightedSample& s : weighted) {
            weights.push_back(std::exp(s.log_sir_weight - max_log));
            trees.push_back(std::move(s.tree));
        }
        core_est = count_marginals(trees, weights, core, core_obs);
    } else if (cfg.resample) {
        Rng resample_rng(derive_seed(cfg.seed, 7));
        const std::vector<Tree> resampled = sir_resample(
            weighted, static_cast<std::size_t>(cfg.n_samples), resample_rng, cfg.scheme);
        core_est = estimate_marginals(resampled, core, core_obs);
    } else {
        std::vector<Tree> trees;
        trees.reserve(weighted.size());
        for (WeightedSample& s : weighted)
            trees.push_back(std::move(s.tree));
        core_est = estimate_marginals(trees, core, core_obs);
    }

    // Map back to the input graph's ids; unobserved nodes outside the
    // sampled component can never be infected given O, so they get 0.
    std::vector<NodeId> core_to_orig(core.num_nodes(), -1);
    {
        std::vector<NodeId> sub_to_orig(sub.num_nodes(), -1);
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            if (to_sub[u] >= 0)
                sub_to_orig[to_sub[u]] = u;
        for (NodeId u = 0; u < sub.num_nodes(); ++u)
            if (to_core[u] >= 0)
                core_to_orig[to_core[u]] = sub_to_orig[u];
    }

    MarginalEstimate est;
    est.root = core_to_orig[core_est.root];
    std::vector<char> observed(g.num_nodes(), 0);
    for (NodeId u : o.observed_infected)
        observed[u] = 1;
    for (NodeId u : o.observed_uninfected)
        observed[u] = 1;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (!observed[u])
            est.node_prob[u] = 0.0;
    for (const auto& [u, p] : core_est.node_prob)
        est.node_prob[core_to_orig[u]] = p;
    for (const auto& [edge, p] : core_est.edge_prob)
        est.edge_prob[{core_to_orig[edge.first], core_to_orig[edge.second]}] = p;
    return est;
}

} // namespace casrec
