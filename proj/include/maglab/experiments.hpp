#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "maglab/record.hpp"
#include "maglab/trajectory.hpp"

namespace maglab {

// Desk-scale reproductions of the paper-style experiments, one enum entry per
// figure-level study plus the three diagnostic studies.
enum class Experiment {
    fig1_convergence,
    fig2_stationary,
    fig3_current,
    fig4_replay,
    fig5_multiqubit,
    fig6_online,
    ergodicity,
    lyapunov,
    kl_monotone,
};

const char* experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::fig1_convergence;
    int n_qubits = 1;
    double b = 1.0;
    double dt = 0.01;
    double total_time = 400.0;
    std::uint64_t seed = 1;
    Integrator integrator = Integrator::kraus;
    std::filesystem::path output_path;

    // experiment-specific knobs
    int stride = 100;
    int max_order = 500;   // fokker-planck truncation M
    int depth = 100;       // continued-fraction approximant order
    int bins = 63;
    double gamma = 0.0;    // online update rate; 0 -> default 0.5*dt
    double b0 = 0.5;       // online initial estimate
    double b_max = 2.0;    // online clipping bound
    double grid_min = -1.5, grid_max = 1.5, grid_step = 0.05;  // scan grid
    std::optional<std::filesystem::path> record_path;       // replay from file
    std::optional<std::filesystem::path> save_record_path;  // store generated dY
    bool dt_explicit = false;  // --dt given on the command line
    bool check = false;        // enforce thresholds, exit 3 on failure

    double time_or(double fallback) const { return total_time > 0.0 ? total_time : fallback; }
};

struct ExperimentOutcome {
    int exit_code = 0;  // 0 ok; 2 numerical failure; 3 threshold failure (--check)
    std::vector<std::string> summary;
};

// Runs one experiment, writes its data file(s) under cfg.output_path and
// returns the summary lines. Deterministic for a fixed config.
// invalid_argument marks a config error; NumericalError is mapped to exit 2.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

// <stem><suffix><extension> next to the configured output path.
std::filesystem::path path_with_suffix(const std::filesystem::path& base,
                                       const std::string& suffix);

}  // namespace maglab
