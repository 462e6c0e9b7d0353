// io.hpp -- cascade records, score CSVs, and run manifests.

#ifndef CASREC_IO_HPP
#define CASREC_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "casrec/cascade.hpp"
#include "casrec/graph.hpp"
#include "casrec/inference.hpp"

namespace casrec {

// One self-describing record per cascade: ground truth plus (optional)
// observation, node names given as external labels.
//   {"source": .., "infected": [..], "tree_edges": [[parent, child], ..],
//    "observed_infected": [..], "observed_uninfected": [..]}
nlohmann::json cascade_to_json(const ProbGraph& g, const Cascade& c,
                               const Observation* obs = nullptr);

Cascade cascade_from_json(const ProbGraph& g, const nlohmann::json& j);
Observation observation_from_json(const ProbGraph& g, const nlohmann::json& j);

// "node,probability" rows, labels ascending by dense id.
void write_node_scores_csv(std::ostream& out, const ProbGraph& g,
                           const std::map<NodeId, double>& scores);
// "src,dst,probability" rows.
void write_edge_scores_csv(std::ostream& out, const ProbGraph& g,
                           const std::map<std::pair<NodeId, NodeId>, double>& scores);

std::map<NodeId, double> read_node_scores_csv(std::istream& in, const ProbGraph& g);
std::map<std::pair<NodeId, NodeId>, double>
read_edge_scores_csv(std::istream& in, const ProbGraph& g);

// FNV-1a digest of a file's bytes, for manifest input pinning.
std::uint64_t file_digest(const std::string& path);

// Writes "<output>.manifest.json" describing a reproducible run: command,
// resolved configuration, master seed, library version, input digests.
void write_manifest(const std::string& output_path, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed,
                    const std::vector<std::string>& input_paths);

inline constexpr const char* kVersion = "0.1.0";

} // namespace casrec

#endif
