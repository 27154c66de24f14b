#ifndef CHIRALQB_CONFIG_HPP
#define CHIRALQB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "chiralqb/params.hpp"

namespace chiralqb {

struct EvolveConfig {
    double t_end = 0.0;
    int n_samples = 201;
    double rtol = 1e-9;
    double atol = 1e-12;
};

struct SweepRange {
    std::string var;  // one of D, phase, nbar, drive_amp
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct SweepConfig {
    SweepRange primary;
    std::optional<SweepRange> secondary;
};

struct OracleConfig {
    int cutoff = 6;
    double omega_scale = 0.05;  // oracle drive = omega_scale * gamma_R
};

struct FigureConfig {
    std::vector<double> nbars = {0.0, 0.5, 1.0};
    std::vector<double> omegas;  // empty -> per-figure defaults
};

struct RunConfig {
    SystemParams params{};
    std::optional<EvolveConfig> evolve;
    std::optional<SweepConfig> sweep;
    OracleConfig oracle;
    FigureConfig figure;
};

// Parses and validates a JSON configuration document. Unknown keys and
// schema violations raise ParseError with field context; parameter
// violations propagate as the params module's errors.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);  // same, from memory

// Resolved parameter set as a single-line JSON object (provenance).
std::string params_json(const SystemParams& p);

}  // namespace chiralqb

#endif
