// experiment.hpp -- seeded sweep harness producing plot-ready AP tables.

#ifndef CASREC_EXPERIMENT_HPP
#define CASREC_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "casrec/graph.hpp"
#include "casrec/inference.hpp"

namespace casrec {

struct MethodSpec {
    enum class Kind { kTreeSampling, kPageRank, kMinSteiner };

    std::string name;
    Kind kind = Kind::kTreeSampling;
    // Tree-sampling knobs (ignored by the baselines).
    SamplerKind sampler = SamplerKind::kLerw;
    RootStrategy root = RootStrategy::kTrueRoot;
    int samples = 1000;
    bool resample = true;
};

struct ExperimentSpec {
    std::string graph_name = "graph";
    std::string model = "si";  // si | ic
    double beta = 0.1;         // SI transmission probability, also the edge p
    std::string probs = "";    // "beta" | "uniform"; default depends on model
    std::vector<double> cascade_fractions{0.1};
    std::vector<double> obs_fractions{0.5};
    int reps = 100;
    std::uint64_t seed = 0;
    std::vector<MethodSpec> methods;

    static ExperimentSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ResultRow {
    double cascade_fraction = 0.0;
    double obs_fraction = 0.0;
    std::string method;
    std::string level; // node | edge
    int rep = 0;
    double ap = 0.0;
};

struct AggregateRow {
    double cascade_fraction = 0.0;
    double obs_fraction = 0.0;
    std::string method;
    std::string level;
    int completed = 0;
    int failed = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<AggregateRow> aggregates;
    std::vector<std::string> failures; // one line per excluded run
};

// Runs the sweep: for every grid point and repetition, simulate a cascade,
// observe it, run every method, and score node-level (and when the method
// produces a tree, edge-level) average precision. Failed runs are excluded
// and counted. Deterministic for fixed (spec, seed); repetitions fan out
// over `workers` threads with per-repetition derived seeds.
ExperimentResult run_experiment(const ProbGraph& g, const ExperimentSpec& spec,
                                int workers = 1);

void write_rows_csv(std::ostream& out, const std::string& graph_name,
                    const std::string& model, const std::vector<ResultRow>& rows);
void write_aggregates_csv(std::ostream& out, const std::string& graph_name,
                          const std::string& model,
                          const std::vector<AggregateRow>& rows);

} // namespace casrec

#endif
