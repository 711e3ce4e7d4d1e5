#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinnet/dynamics.hpp"
#include "pinnet/generator.hpp"
#include "pinnet/spectral.hpp"

namespace pinnet {

/// Experiment spec file: line-oriented `key = value` pairs grouped in
/// `[section]` headers. Sections: network, oscillator, control,
/// coupling_function, integration, init, seeds, checks, output; `name` sits
/// above the first section. `#' and `;' start comment lines.
struct SpecParseError : std::runtime_error {
    SpecParseError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
          line(line) {}
    int line;
};

struct NetworkSpec {
    GeneratorConfig gen;     // kind Explicit means "load from file"
    std::string file;        // triplet-format path (kind = file)
    bool fixed_seed = false; // [network] seed given: same matrix for every run
};

struct CheckSpec {
    std::vector<Theorem> theorems;
    Eigen::VectorXd delta;  // explicit Delta diagonal; empty with use_quad set
    bool use_quad = false;  // estimate Delta by sampling
    int quad_samples = 20000;
    std::uint64_t quad_seed = 0;
    double quad_delta_max = 60.0;
    double quad_delta_step = 0.5;
    Eigen::VectorXd quad_box_lo, quad_box_hi;  // empty = oscillator default box
    double c = std::numeric_limits<double>::quiet_NaN();  // default: control c0
    double eta = 0.1;          // T1 margin
    double t1_horizon = 100.0;
    double t1_dt = 1e-3;
};

struct ExperimentSpec {
    std::string name;
    NetworkSpec network;
    SimulationConfig sim;  // sim.A and sim.seed are filled in per run
    std::vector<std::uint64_t> seeds;
    CheckSpec checks;
    std::string output_dir = ".";
    double converged_threshold = 1e-3;
};

ExperimentSpec parse_spec(std::istream& in, const std::string& source_name);
ExperimentSpec parse_spec_file(const std::string& path);

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_dir;
    bool desk_scale = false;  // force generated networks to m = 100
};

/// Seed sweep: network build, structure analysis, criterion checks,
/// simulation, and per-seed csv/report plus a cross-seed summary csv.
/// Returns the process exit code (0 ok, 3 on I/O failure).
int run_experiment(ExperimentSpec spec, const RunOptions& options,
                   std::ostream& log);

/// Criterion reports only, no simulation; uses the first seed's network.
int check_experiment(ExperimentSpec spec, const RunOptions& options,
                     std::ostream& log);

/// Emits the first seed's network as `<name>-network.dat` in the output dir.
int gen_experiment(ExperimentSpec spec, const RunOptions& options,
                   std::ostream& log);

}  // namespace pinnet
