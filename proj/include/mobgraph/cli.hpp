#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mobgraph/centrality.hpp"
#include "mobgraph/construct.hpp"
#include "mobgraph/flows.hpp"
#include "mobgraph/laplacian.hpp"

namespace mobgraph {

// Parsed command line of the mobgraph tool: one command plus everything it
// needs. Kept as a plain struct so pipelines can also be driven in-process.
struct RunConfig {
    std::string command;

    // inputs
    std::string input;            // the command's graph / partition / OD / nodes file
    std::string second;           // cpc: the second OD csv
    std::string ids_path;         // id-list sidecar of `input` (OD inputs)
    std::string second_ids_path;  // id-list sidecar of `second`
    std::string flux_path;        // fick: id,flux csv
    std::string distances_path;   // gravity: origin,destination,distance csv
    std::string partition_path;   // export: partition geojson
    std::string table_path;       // export: metrics csv

    // how to read `input`
    std::string input_format = "auto"; // auto | geojson | od | edges
    Contiguity contiguity = Contiguity::Queen;
    bool include_self_loops = false;
    std::optional<bool> directed; // edge lists without an embedded hint

    // preprocessing (applied in this order)
    long prune_degree = -1; // < 0: off
    bool prune_iterate = false;
    bool largest_scc = false;

    // metrics
    std::vector<std::string> metrics = {"closeness", "betweenness", "pagerank"};
    bool invert_weights = false;
    std::optional<NormalizeMethod> normalize;
    bool quartiles = false;
    double damping = 0.85;

    // laplacian
    std::vector<LaplacianKind> kinds = {LaplacianKind::Combinatorial};
    bool export_matrix = false;

    // gravity
    Deterrence deterrence = Deterrence::Power;
    double beta1 = 1.0;
    double beta2 = 2.0;

    // fick
    double diffusivity = 1.0;

    // shared numerics & output
    double tol = 1e-12;
    std::string out_dir = ".";
};

// Executes a config: loads the declared inputs, runs the analysis, writes the
// artifacts under out_dir, and reports progress on `out`. Every rejection
// from an inner module comes back as exit code 1 with its
// `module.operation: cause` diagnostic on `err`; success is exit code 0.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses `args` (program name excluded) into a RunConfig and runs it.
// Parse errors and --help are handled here, with the usual exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mobgraph
