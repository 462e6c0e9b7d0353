#include "casrec/generators.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace casrec {

namespace {

std::vector<std::string> numeric_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return labels;
}

ProbGraph from_undirected_pairs(int n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                double p) {
    std::vector<GraphEdge> edges;
    edges.reserve(pairs.size() * 2);
    for (const auto& [u, v] : pairs) {
        edges.push_back({u, v, p});
        edges.push_back({v, u, p});
    }
    return ProbGraph(n, std::move(edges), numeric_labels(n));
}

} // namespace

ProbGraph gen_grid(int width, int height, double p) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("gen_grid: dimensions must be positive");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    const auto id = [width](int x, int y) { return static_cast<NodeId>(y * width + x); };
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (x + 1 < width)
                pairs.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < height)
                pairs.emplace_back(id(x, y), id(x, y + 1));
        }
    }
    return from_undirected_pairs(width * height, pairs, p);
}

ProbGraph gen_path(int n, double p) {
    if (n < 2)
        throw std::invalid_argument("gen_path: need at least 2 nodes");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i + 1 < n; ++i)
        pairs.emplace_back(i, i + 1);
    return from_undirected_pairs(n, pairs, p);
}

ProbGraph gen_cycle(int n, double p) {
    if (n < 3)
        throw std::invalid_argument("gen_cycle: need at least 3 nodes");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i < n; ++i)
        pairs.emplace_back(i, (i + 1) % n);
    return from_undirected_pairs(n, pairs, p);
}

ProbGraph gen_complete(int n, double p) {
    if (n < 2)
        throw std::invalid_argument("gen_complete: need at least 2 nodes");
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    return from_undirected_pairs(n, pairs, p);
}

ProbGraph import_undirected(std::istream& in) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    const auto intern = [&](const std::string& name) {
        const auto [it, inserted] = ids.emplace(name, static_cast<NodeId>(labels.size()));
        if (inserted)
            labels.push_back(name);
        return it->second;
    };

    std::vector<GraphEdge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string u, v;
        if (!(fields >> u >> v)) {
            std::string probe;
            if (!(std::istringstream(line) >> probe))
                continue;
            throw std::invalid_argument("import_undirected: malformed line " +
                                        std::to_string(lineno));
        }
        double p = 1.0;
        fields >> p;
        const NodeId a = intern(u), b = intern(v);
        edges.push_back({a, b, p});
        edges.push_back({b, a, p});
    }
    const NodeId n = static_cast<NodeId>(labels.size());
    return ProbGraph(n, std::move(edges), std::move(labels));
}

} // namespace casrec
