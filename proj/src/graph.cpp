#include "casrec/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace casrec {

ProbGraph::ProbGraph(NodeId n, std::vector<GraphEdge> edges,
                     std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
    if (n < 0)
        throw std::invalid_argument("graph: negative node count");
    if (static_cast<std::size_t>(n) != labels_.size())
        throw std::invalid_argument("graph: label count does not match node count");

    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const GraphEdge& e = edges[i];
        if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (e.from == e.to)
            throw std::invalid_argument("graph: self-loop at node " + labels_[e.from]);
        if (!(e.prob > 0.0) || e.prob > 1.0)
            throw std::invalid_argument("graph: probability out of (0,1] on edge " +
                                        labels_[e.from] + " -> " + labels_[e.to]);
        if (i > 0 && edges[i - 1].from == e.from && edges[i - 1].to == e.to)
            throw std::invalid_argument("graph: duplicate directed edge " +
                                        labels_[e.from] + " -> " + labels_[e.to]);
    }

    out_off_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const GraphEdge& e : edges)
        ++out_off_[static_cast<std::size_t>(e.from) + 1];
    for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u)
        out_off_[u + 1] += out_off_[u];
    to_.resize(edges.size());
    p_.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        to_[i] = edges[i].to;
        p_[i] = edges[i].prob;
    }

    // Reverse index, sorted by (to, from) because the input is (from, to)-sorted.
    in_off_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const GraphEdge& e : edges)
        ++in_off_[static_cast<std::size_t>(e.to) + 1];
    for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u)
        in_off_[u + 1] += in_off_[u];
    from_.resize(edges.size());
    in_p_.resize(edges.size());
    {
        std::vector<std::size_t> cursor(in_off_.begin(), in_off_.end() - 1);
        for (const GraphEdge& e : edges) {
            const std::size_t slot = cursor[e.to]++;
            from_[slot] = e.from;
            in_p_[slot] = e.prob;
        }
    }

    in_weight_.assign(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        double sum = 0.0, comp = 0.0; // Kahan
        for (double p : in_probs(u)) {
            const double y = p - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        in_weight_[u] = sum;
    }

    for (const GraphEdge& e : edges) {
        if (!has_edge(e.to, e.from))
            throw std::invalid_argument("graph: missing reciprocal edge " +
                                        labels_[e.to] + " -> " + labels_[e.from]);
    }
}

bool ProbGraph::has_edge(NodeId u, NodeId v) const {
    const auto nbrs = out_neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

double ProbGraph::edge_prob(NodeId u, NodeId v) const {
    const auto nbrs = out_neighbors(u);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v)
        throw std::out_of_range("graph: no edge " + labels_[u] + " -> " + labels_[v]);
    return p_[out_off_[u] + static_cast<std::size_t>(it - nbrs.begin())];
}

NodeId ProbGraph::node_by_label(const std::string& label) const {
    for (NodeId u = 0; u < n_; ++u)
        if (labels_[u] == label)
            return u;
    throw std::out_of_range("graph: unknown node label '" + label + "'");
}

std::vector<GraphEdge> ProbGraph::edge_list() const {
    std::vector<GraphEdge> edges;
    edges.reserve(num_edges());
    for (NodeId u = 0; u < n_; ++u) {
        const auto nbrs = out_neighbors(u);
        const auto probs = out_probs(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            edges.push_back({u, nbrs[i], probs[i]});
    }
    return edges;
}

ProbGraph ProbGraph::with_probs(const std::vector<double>& probs) const {
    std::vector<GraphEdge> edges = edge_list();
    if (probs.size() != edges.size())
        throw std::invalid_argument("with_probs: probability count mismatch");
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i].prob = probs[i];
    return ProbGraph(n_, std::move(edges), labels_);
}

ProbGraph load_graph(std::istream& in) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<GraphEdge> edges;

    const auto intern = [&](const std::string& name) {
        const auto [it, inserted] = ids.emplace(name, static_cast<NodeId>(labels.size()));
        if (inserted)
            labels.push_back(name);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string u, v;
        double p = 0.0;
        if (!(fields >> u >> v >> p)) {
            std::string rest;
            if (!(std::istringstream(line) >> rest)) // whitespace-only line
                continue;
            throw std::invalid_argument("load_graph: malformed line " +
                                        std::to_string(lineno) + ": '" + line + "'");
        }
        std::string extra;
        if (fields >> extra)
            throw std::invalid_argument("load_graph: trailing fields on line " +
                                        std::to_string(lineno));
        edges.push_back({intern(u), intern(v), p});
    }

    const NodeId n = static_cast<NodeId>(labels.size());
    return ProbGraph(n, std::move(edges), std::move(labels));
}

void serialize_graph(const ProbGraph& g, std::ostream& out) {
    std::ostringstream fmt;
    fmt.precision(17);
    for (const GraphEdge& e : g.edge_list()) {
        fmt.str("");
        fmt << g.label(e.from) << '\t' << g.label(e.to) << '\t' << e.prob << '\n';
        out << fmt.str();
    }
}

ProbGraph restrict_graph(const ProbGraph& g,
                         const std::unordered_set<NodeId>& uninfected) {
    std::vector<NodeId> dense(g.num_nodes(), -1);
    std::vector<std::string> labels;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (uninfected.count(u))
            continue;
        dense[u] = static_cast<NodeId>(labels.size());
        labels.push_back(g.label(u));
    }
    if (labels.empty())
        throw std::invalid_argument("restrict_graph: resulting graph is empty");

    std::vector<GraphEdge> edges;
    for (const GraphEdge& e : g.edge_list())
        if (dense[e.from] >= 0 && dense[e.to] >= 0)
            edges.push_back({dense[e.from], dense[e.to], e.prob});

    const NodeId n = static_cast<NodeId>(labels.size());
    return ProbGraph(n, std::move(edges), std::move(labels));
}

std::vector<int> connected_components(const ProbGraph& g, int& count) {
    std::vector<int> comp(g.num_nodes(), -1);
    std::vector<NodeId> stack;
    count = 0;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
        if (comp[s] >= 0)
            continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : g.out_neighbors(u)) {
                if (comp[v] < 0) {
                    comp[v] = count;
                    stack.push_back(v);
                }
            }
        }
        ++count;
    }
    return comp;
}

} // namespace casrec
