#pragma once

#include "lyap/model.hpp"

#include <cstdint>
#include <string>

namespace lyap {

/// Batch-run description assembled by the command line (or by tests).
struct RunConfig {
    std::string command;            ///< omega|classify|expand|mc|sde|fp|validate|scan
    std::string config_path;        ///< model file (JSON); overrides config_json
    std::string config_json;        ///< inline model text
    std::string route = "closed";   ///< closed|fp|mc|sde|expand
    int order = 4;                  ///< expansion order for the series route
    std::string sweep;              ///< PARAM=START:STOP:N (scan)
    std::string out_path;           ///< empty writes to stdout
    std::string format = "json";    ///< json|csv
    std::uint64_t seed = 1;
    int replicas = 8;
    long long steps = 1000000;
    int grid = 4096;                ///< deterministic-solver grid
    double dt = 0.01;               ///< diffusion-route step
};

struct RunResult {
    int status = 0;        ///< 0 ok, 2 config error, 3 unsupported family
    std::string output;    ///< emitted artifact (also written to out_path)
    std::string error;     ///< human-readable failure reason when status != 0
};

/// Parses the model description: {"means": {...}, "cov": [[...],...]} with an
/// optional "preset" and "preset_args".
DisorderModel parse_model_json(const std::string& text);

RunResult run(const RunConfig& cfg);

} // namespace lyap
