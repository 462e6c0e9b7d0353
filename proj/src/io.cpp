#include "casrec/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casrec {

namespace {

std::vector<std::string> to_labels(const ProbGraph& g, const std::vector<NodeId>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (NodeId u : ids)
        out.push_back(g.label(u));
    return out;
}

std::vector<NodeId> to_ids(const ProbGraph& g, const nlohmann::json& arr) {
    std::vector<NodeId> out;
    out.reserve(arr.size());
    for (const auto& v : arr)
        out.push_back(g.node_by_label(v.get<std::string>()));
    std::sort(out.begin(), out.end());
    return out;
}

std::string csv_field(std::istringstream& row, const char* what) {
    std::string field;
    if (!std::getline(row, field, ','))
        throw std::invalid_argument(std::string("csv: missing field ") + what);
    return field;
}

} // namespace

nlohmann::json cascade_to_json(const ProbGraph& g, const Cascade& c,
                               const Observation* obs) {
    nlohmann::json j;
    j["source"] = g.label(c.source);
    j["infected"] = to_labels(g, c.infected());
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [child, parent] : c.tree.edges())
        edges.push_back({g.label(parent), g.label(child)});
    j["tree_edges"] = std::move(edges);
    j["observed_infected"] =
        obs ? to_labels(g, obs->observed_infected) : std::vector<std::string>{};
    j["observed_uninfected"] =
        obs ? to_labels(g, obs->observed_uninfected) : std::vector<std::string>{};
    return j;
}

Cascade cascade_from_json(const ProbGraph& g, const nlohmann::json& j) {
    Cascade c;
    c.source = g.node_by_label(j.at("source").get<std::string>());
    const std::vector<NodeId> infected = to_ids(g, j.at("infected"));
    std::vector<NodeId> parent(g.num_nodes(), Tree::kNoParent);
    for (const auto& e : j.at("tree_edges")) {
        const NodeId p = g.node_by_label(e.at(0).get<std::string>());
        const NodeId child = g.node_by_label(e.at(1).get<std::string>());
        parent[child] = p;
    }
    c.tree = make_tree(g.num_nodes(), c.source, infected, parent);
    return c;
}

Observation observation_from_json(const ProbGraph& g, const nlohmann::json& j) {
    Observation o;
    o.observed_infected = to_ids(g, j.at("observed_infected"));
    o.observed_uninfected = to_ids(g, j.at("observed_uninfected"));
    return o;
}

void write_node_scores_csv(std::ostream& out, const ProbGraph& g,
                           const std::map<NodeId, double>& scores) {
    out << "node,probability\n";
    std::ostringstream fmt;
    fmt.precision(17);
    for (const auto& [u, p] : scores) {
        fmt.str("");
        fmt << g.label(u) << ',' << p << '\n';
        out << fmt.str();
    }
}

void write_edge_scores_csv(std::ostream& out, const ProbGraph& g,
                           const std::map<std::pair<NodeId, NodeId>, double>& scores) {
    out << "src,dst,probability\n";
    std::ostringstream fmt;
    fmt.precision(17);
    for (const auto& [e, p] : scores) {
        fmt.str("");
        fmt << g.label(e.first) << ',' << g.label(e.second) << ',' << p << '\n';
        out << fmt.str();
    }
}

std::map<NodeId, double> read_node_scores_csv(std::istream& in, const ProbGraph& g) {
    std::map<NodeId, double> scores;
    std::string line;
    if (!std::getline(in, line) || line.rfind("node,", 0) != 0)
        throw std::invalid_argument("csv: expected header 'node,probability'");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        const std::string node = csv_field(row, "node");
        const std::string value = csv_field(row, "probability");
        scores[g.node_by_label(node)] = std::stod(value);
    }
    return scores;
}

std::map<std::pair<NodeId, NodeId>, double>
read_edge_scores_csv(std::istream& in, const ProbGraph& g) {
    std::map<std::pair<NodeId, NodeId>, double> scores;
    std::string line;
    if (!std::getline(in, line) || line.rfind("src,", 0) != 0)
        throw std::invalid_argument("csv: expected header 'src,dst,probability'");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        const std::string src = csv_field(row, "src");
        const std::string dst = csv_field(row, "dst");
        const std::string value = csv_field(row, "probability");
        scores[{g.node_by_label(src), g.node_by_label(dst)}] = std::stod(value);
    }
    return scores;
}

std::uint64_t file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("file_digest: cannot open " + path);
    std::uint64_t hash = 1469598103934665603ULL;
    char buffer[4096];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ULL;
        }
        if (!in)
            break;
    }
    return hash;
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed,
                    const std::vector<std::string>& input_paths) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["version"] = kVersion;
    nlohmann::json inputs = nlohmann::json::object();
    for (const std::string& p : input_paths) {
        std::ostringstream hex;
        hex << std::hex << file_digest(p);
        inputs[p] = hex.str();
    }
    j["inputs"] = std::move(inputs);

    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << '\n';
}

} // namespace casrec
