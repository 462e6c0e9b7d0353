#include "casrec/experiment.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "casrec/baselines.hpp"
#include "casrec/cascade.hpp"

namespace casrec {

namespace {

MethodSpec method_from_json(const nlohmann::json& j) {
    MethodSpec m;
    const std::string kind = j.value("kind", "tree-sampling");
    if (kind == "tree-sampling")
        m.kind = MethodSpec::Kind::kTreeSampling;
    else if (kind == "pagerank")
        m.kind = MethodSpec::Kind::kPageRank;
    else if (kind == "min-steiner")
        m.kind = MethodSpec::Kind::kMinSteiner;
    else
        throw std::invalid_argument("experiment: unknown method kind '" + kind + "'");

    if (m.kind == MethodSpec::Kind::kTreeSampling) {
        const std::string sampler = j.value("sampler", "lerw");
        if (sampler == "lerw")
            m.sampler = SamplerKind::kLerw;
        else if (sampler == "trim")
            m.sampler = SamplerKind::kTrim;
        else
            throw std::invalid_argument("experiment: unknown sampler '" + sampler + "'");
        const std::string root = j.value("root", "true");
        if (root == "true")
            m.root = RootStrategy::kTrueRoot;
        else if (root == "min-dist")
            m.root = RootStrategy::kMinDist;
        else if (root == "pagerank")
            m.root = RootStrategy::kPageRank;
        else
            throw std::invalid_argument("experiment: unknown root strategy '" + root + "'");
        m.samples = j.value("samples", 1000);
        m.resample = j.value("resample", true);
    }

    std::string default_name;
    switch (m.kind) {
    case MethodSpec::Kind::kTreeSampling:
        default_name = std::string("tree-") +
                       (m.sampler == SamplerKind::kLerw ? "lerw" : "trim") + "-" +
                       j.value("root", "true");
        break;
    case MethodSpec::Kind::kPageRank:
        default_name = "pagerank";
        break;
    case MethodSpec::Kind::kMinSteiner:
        default_name = "min-steiner";
        break;
    }
    m.name = j.value("name", default_name);
    return m;
}

nlohmann::json method_to_json(const MethodSpec& m) {
    nlohmann::json j;
    j["name"] = m.name;
    switch (m.kind) {
    case MethodSpec::Kind::kTreeSampling:
        j["kind"] = "tree-sampling";
        j["sampler"] = m.sampler == SamplerKind::kLerw ? "lerw" : "trim";
        j["root"] = m.root == RootStrategy::kTrueRoot    ? "true"
                    : m.root == RootStrategy::kMinDist   ? "min-dist"
                                                         : "pagerank";
        j["samples"] = m.samples;
        j["resample"] = m.resample;
        break;
    case MethodSpec::Kind::kPageRank:
        j["kind"] = "pagerank";
        break;
    case MethodSpec::Kind::kMinSteiner:
        j["kind"] = "min-steiner";
        break;
    }
    return j;
}

struct RepOutcome {
    std::vector<ResultRow> rows;
    std::vector<std::string> failures;
};

} // namespace

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    spec.graph_name = j.value("graph_name", spec.graph_name);
    spec.model = j.value("model", spec.model);
    if (spec.model != "si" && spec.model != "ic")
        throw std::invalid_argument("experiment: model must be 'si' or 'ic'");
    spec.beta = j.value("beta", spec.beta);
    spec.probs = j.value("probs", spec.probs);
    if (j.contains("cascade_fractions"))
        spec.cascade_fractions = j.at("cascade_fractions").get<std::vector<double>>();
    if (j.contains("obs_fractions"))
        spec.obs_fractions = j.at("obs_fractions").get<std::vector<double>>();
    spec.reps = j.value("reps", spec.reps);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("methods"))
        for (const auto& mj : j.at("methods"))
            spec.methods.push_back(method_from_json(mj));
    if (spec.methods.empty())
        throw std::invalid_argument("experiment: no methods configured");
    return spec;
}

nlohmann::json ExperimentSpec::to_json() const {
    nlohmann::json j;
    j["graph_name"] = graph_name;
    j["model"] = model;
    j["beta"] = beta;
    j["probs"] = probs.empty() ? (model == "si" ? "beta" : "uniform") : probs;
    j["cascade_fractions"] = cascade_fractions;
    j["obs_fractions"] = obs_fractions;
    j["reps"] = reps;
    j["seed"] = seed;
    nlohmann::json methods = nlohmann::json::array();
    for (const MethodSpec& m : this->methods)
        methods.push_back(method_to_json(m));
    j["methods"] = std::move(methods);
    return j;
}

ExperimentResult run_experiment(const ProbGraph& base, const ExperimentSpec& spec,
                                int workers) {
    if (spec.reps < 1)
        throw std::invalid_argument("experiment: reps must be positive");

    // Resolve edge probabilities once; the probabilistic graph is part of
    // the experimental setting, cascades vary per repetition.
    const std::string probs = spec.probs.empty()
                                  ? (spec.model == "si" ? "beta" : "uniform")
                                  : spec.probs;
    ProbGraph g = base;
    if (probs == "beta") {
        g = base.with_probs(std::vector<double>(base.num_edges(), spec.beta));
    } else if (probs == "uniform") {
        Rng prob_rng(derive_seed(spec.seed, 999));
        g = assign_uniform_probs(base, prob_rng);
    } else {
        throw std::invalid_argument("experiment: probs must be 'beta' or 'uniform'");
    }

    std::vector<GraphEdge> all_edges = g.edge_list();

    const std::size_t grid =
        spec.cascade_fractions.size() * spec.obs_fractions.size();
    std::vector<RepOutcome> outcomes(grid * static_cast<std::size_t>(spec.reps));

    const auto run_rep = [&](std::size_t gi, int rep) {
        const double cf = spec.cascade_fractions[gi / spec.obs_fractions.size()];
        const double of = spec.obs_fractions[gi % spec.obs_fractions.size()];
        RepOutcome& out = outcomes[gi * spec.reps + rep];
        std::ostringstream where;
        where << "cf=" << cf << " of=" << of << " rep=" << rep;

        const std::uint64_t rep_seed =
            derive_seed(spec.seed, gi * 1000003ULL + static_cast<std::uint64_t>(rep));
        Rng rng(rep_seed);

        Cascade cascade;
        Observation obs;
        try {
            const NodeId source =
                static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(g.num_nodes())));
            cascade = spec.model == "si"
                          ? simulate_si(g, spec.beta, source, cf, rng)
                          : simulate_ic(g, source, cf, rng);
            obs = observe(cascade, g, of, 0.0, rng);
        } catch (const std::exception& e) {
            out.failures.push_back(where.str() + " method=* : " + e.what());
            return;
        }

        NodeSet hidden_infected;
        {
            NodeSet observed(obs.observed_infected.begin(), obs.observed_infected.end());
            for (NodeId u : cascade.infected())
                if (!observed.count(u))
                    hidden_infected.insert(u);
        }
        EdgeSet true_edges;
        for (const auto& [child, parent] : cascade.tree.edges())
            true_edges.insert({parent, child});

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            const MethodSpec& m = spec.methods[mi];
            try {
                NodeScores node_scores;
                EdgeScores edge_scores;
                bool has_edges = false;

                if (m.kind == MethodSpec::Kind::kTreeSampling) {
                    ReconConfig cfg;
                    cfg.sampler = m.sampler;
                    cfg.n_samples = m.samples;
                    cfg.resample = m.resample;
                    cfg.root_strategy = m.root;
                    cfg.true_root = cascade.source;
                    cfg.seed = derive_seed(rep_seed, 17 + mi);
                    const MarginalEstimate est = reconstruct(g, obs, cfg);
                    for (const auto& [u, p] : est.node_prob)
                        node_scores.emplace_back(u, p);
                    has_edges = true;
                    for (const GraphEdge& e : all_edges) {
                        const auto it = est.edge_prob.find({e.from, e.to});
                        edge_scores.emplace_back(std::make_pair(e.from, e.to),
                                                 it == est.edge_prob.end() ? 0.0
                                                                           : it->second);
                    }
                } else if (m.kind == MethodSpec::Kind::kPageRank) {
                    node_scores = pagerank_baseline(g, obs);
                } else {
                    const SteinerBaseline steiner =
                        min_steiner_tree(g, obs.observed_infected);
                    node_scores = steiner.nodes;
                    has_edges = true;
                    EdgeSet tree_edges;
                    for (const auto& [child, parent] : steiner.tree.edges())
                        tree_edges.insert({parent, child});
                    for (const GraphEdge& e : all_edges)
                        edge_scores.emplace_back(std::make_pair(e.from, e.to),
                                                 tree_edges.count({e.from, e.to}) ? 1.0
                                                                                  : 0.0);
                }

                out.rows.push_back({cf, of, m.name, "node", rep,
                                    average_precision(node_scores, hidden_infected)});
                if (has_edges)
                    out.rows.push_back({cf, of, m.name, "edge", rep,
                                        average_precision(edge_scores, true_edges)});
            } catch (const std::exception& e) {
                out.failures.push_back(where.str() + " method=" + m.name + " : " +
                                       e.what());
            }
        }
    };

    const int n_workers = std::max(1, workers);
    if (n_workers == 1) {
        for (std::size_t gi = 0; gi < grid; ++gi)
            for (int rep = 0; rep < spec.reps; ++rep)
                run_rep(gi, rep);
    } else {
        std::atomic<std::size_t> cursor{0};
        const std::size_t total = grid * static_cast<std::size_t>(spec.reps);
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < total;
                     i = cursor.fetch_add(1))
                    run_rep(i / spec.reps, static_cast<int>(i % spec.reps));
            });
        }
        for (auto& t : pool)
            t.join();
    }

    ExperimentResult result;
    for (const RepOutcome& out : outcomes) {
        result.rows.insert(result.rows.end(), out.rows.begin(), out.rows.end());
        result.failures.insert(result.failures.end(), out.failures.begin(),
                               out.failures.end());
    }

    // Aggregate by (grid point, method, level) in spec order.
    for (std::size_t gi = 0; gi < grid; ++gi) {
        const double cf = spec.cascade_fractions[gi / spec.obs_fractions.size()];
        const double of = spec.obs_fractions[gi % spec.obs_fractions.size()];
        for (const MethodSpec& m : spec.methods) {
            for (const char* level : {"node", "edge"}) {
                double sum = 0.0, sq = 0.0;
                int k = 0;
                for (const ResultRow& row : result.rows) {
                    if (row.cascade_fraction == cf && row.obs_fraction == of &&
                        row.method == m.name && row.level == level) {
                        sum += row.ap;
                        sq += row.ap * row.ap;
                        ++k;
                    }
                }
                const bool edge_capable = m.kind != MethodSpec::Kind::kPageRank;
                if (k == 0 && (std::string(level) == "edge" && !edge_capable))
                    continue; // the method does not produce edge predictions
                AggregateRow agg;
                agg.cascade_fraction = cf;
                agg.obs_fraction = of;
                agg.method = m.name;
                agg.level = level;
                agg.completed = k;
                agg.failed = spec.reps - k;
                if (k > 0) {
                    agg.mean = sum / k;
                    if (k > 1) {
                        const double var =
                            std::max(0.0, (sq - sum * sum / k) / (k - 1));
                        agg.stderr_mean = std::sqrt(var / k);
                    }
                }
                result.aggregates.push_back(std::move(agg));
            }
        }
    }
    return result;
}

void write_rows_csv(std::ostream& out, const std::string& graph_name,
                    const std::string& model, const std::vector<ResultRow>& rows) {
    out << "graph,model,cascade_fraction,obs_fraction,method,level,rep,ap\n";
    std::ostringstream fmt;
    fmt.precision(17);
    for (const ResultRow& r : rows) {
        fmt.str("");
        fmt << graph_name << ',' << model << ',' << r.cascade_fraction << ','
            << r.obs_fraction << ',' << r.method << ',' << r.level << ','
            << r.rep << ',' << r.ap << '\n';
        out << fmt.str();
    }
}

void write_aggregates_csv(std::ostream& out, const std::string& graph_name,
                          const std::string& model,
                          const std::vector<AggregateRow>& rows) {
    out << "graph,model,cascade_fraction,obs_fraction,method,level,completed,"
           "failed,mean_ap,stderr\n";
    std::ostringstream fmt;
    fmt.precision(17);
    for (const AggregateRow& r : rows) {
        fmt.str("");
        fmt << graph_name << ',' << model << ',' << r.cascade_fraction << ','
            << r.obs_fraction << ',' << r.method << ',' << r.level << ','
            << r.completed << ',' << r.failed << ',' << r.mean << ','
            << r.stderr_mean << '\n';
        out << fmt.str();
    }
}

} // namespace casrec
