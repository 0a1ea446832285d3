// Command-line experiment runner: one subcommand per experiment, plus
// `record` for generating Wiener-realization files. Exit codes: 0 success,
// 1 config error, 2 numerical failure, 3 threshold failure with --check.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "maglab/errors.hpp"
#include "maglab/experiments.hpp"
#include "maglab/record.hpp"

namespace {

using maglab::Experiment;
using maglab::ExperimentConfig;

struct CliState {
    ExperimentConfig cfg;
    std::string integrator = "kraus";
    std::string record_path, save_record_path, out_path;
    bool selected = false;
};

void add_common_options(CLI::App* sub, CliState& st) {
    sub->set_config("--config");
    sub->add_option("--b", st.cfg.b, "field strength B");
    sub->add_option("--dt", st.cfg.dt, "time step");
    sub->add_option("--time", st.cfg.total_time, "total evolution time");
    sub->add_option("--seed", st.cfg.seed, "master seed");
    sub->add_option("--out", st.out_path, "output file (csv)")->required();
    sub->add_option("--n-qubits", st.cfg.n_qubits, "number of qubits");
    sub->add_option("--integrator", st.integrator, "euler|kraus")
        ->check(CLI::IsMember({"euler", "kraus"}));
    sub->add_option("--stride", st.cfg.stride, "state sampling stride (steps)");
    sub->add_flag("--check", st.cfg.check, "enforce acceptance thresholds (exit 3 on failure)");
}

int finish(CliState& st, CLI::App* sub) {
    st.selected = true;
    st.cfg.integrator = st.integrator == "euler" ? maglab::Integrator::euler
                                                 : maglab::Integrator::kraus;
    st.cfg.output_path = st.out_path;
    st.cfg.dt_explicit = sub->count("--dt") > 0;
    if (!st.record_path.empty()) st.cfg.record_path = st.record_path;
    if (!st.save_record_path.empty()) st.cfg.save_record_path = st.save_record_path;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective-spin magnetometer laboratory"};
    app.require_subcommand(1);

    CliState st;

    auto* fig1 = app.add_subcommand("fig1_convergence",
                                    "four initial states, shared realization: purity and "
                                    "angle coincidence");
    st.cfg.experiment = Experiment::fig1_convergence;

    auto* fig2 = app.add_subcommand("fig2_stationary",
                                    "stationary angular distribution by continued fractions");
    auto* fig3 = app.add_subcommand("fig3_current",
                                    "probability current and mean angle over a field sweep");
    auto* fig4 = app.add_subcommand("fig4_replay",
                                    "replay a single-qubit measurement record from other "
                                    "initial states");
    auto* fig5 = app.add_subcommand("fig5_multiqubit",
                                    "multi-qubit record replay: purification and state "
                                    "coincidence");
    auto* fig6 = app.add_subcommand("fig6_online",
                                    "likelihood scan, gradient SDE check, and online field "
                                    "estimation");
    auto* ergo = app.add_subcommand("ergodicity",
                                    "occupancy histogram of one angular trajectory vs the "
                                    "stationary density");
    auto* lyap = app.add_subcommand("lyapunov", "B=0 Lyapunov increment check");
    auto* klm = app.add_subcommand("kl_monotone",
                                   "spectral FP evolution: KL divergence monotonicity");
    auto* rec = app.add_subcommand("record", "generate and store a Wiener realization");

    for (CLI::App* sub : {fig1, fig2, fig3, fig4, fig5, fig6, ergo, lyap, klm})
        add_common_options(sub, st);

    // per-experiment knobs and defaults
    fig2->add_option("--m-order", st.cfg.max_order, "Fourier truncation order M");
    fig2->add_option("--depth", st.cfg.depth, "continued-fraction approximant order");
    fig3->add_option("--m-order", st.cfg.max_order, "Fourier truncation order M");
    fig3->add_option("--depth", st.cfg.depth, "continued-fraction approximant order");
    fig3->add_option("--grid-min", st.cfg.grid_min, "sweep start");
    fig3->add_option("--grid-max", st.cfg.grid_max, "sweep end");
    fig3->add_option("--grid-step", st.cfg.grid_step, "sweep step");
    fig4->add_option("--record", st.record_path, "replay this dY record file");
    fig4->add_option("--save-record", st.save_record_path, "store the generated dY record");
    fig5->add_option("--save-record", st.save_record_path, "store the coherent-state record");
    fig6->add_option("--record", st.record_path, "replay this dY record file");
    fig6->add_option("--save-record", st.save_record_path, "store the generated dY record");
    fig6->add_option("--gamma", st.cfg.gamma, "update rate (default 0.5*dt)");
    fig6->add_option("--b0", st.cfg.b0, "initial field estimate");
    fig6->add_option("--b-max", st.cfg.b_max, "prior amplitude bound");
    fig6->add_option("--grid-min", st.cfg.grid_min, "scan grid start");
    fig6->add_option("--grid-max", st.cfg.grid_max, "scan grid end");
    fig6->add_option("--grid-step", st.cfg.grid_step, "scan grid step");
    ergo->add_option("--bins", st.cfg.bins, "histogram bins");
    klm->add_option("--m-order", st.cfg.max_order, "Fourier truncation order M");

    std::string rec_out;
    double rec_dt = 0.01;
    std::uint64_t rec_steps = 0, rec_seed = 1, rec_stream = 0;
    rec->add_option("--dt", rec_dt, "time step")->required();
    rec->add_option("--steps", rec_steps, "number of increments")->required();
    rec->add_option("--seed", rec_seed, "seed");
    rec->add_option("--stream", rec_stream, "stream index");
    rec->add_option("--out", rec_out, "output record file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rec->parsed()) {
            maglab::save_record(rec_out,
                                maglab::generate_wiener(rec_dt, rec_steps, rec_seed, rec_stream));
            std::cout << "record: wrote " << rec_steps << " dW increments to " << rec_out
                      << "\n";
            return 0;
        }

        const std::pair<CLI::App*, Experiment> table[] = {
            {fig1, Experiment::fig1_convergence}, {fig2, Experiment::fig2_stationary},
            {fig3, Experiment::fig3_current},     {fig4, Experiment::fig4_replay},
            {fig5, Experiment::fig5_multiqubit},  {fig6, Experiment::fig6_online},
            {ergo, Experiment::ergodicity},       {lyap, Experiment::lyapunov},
            {klm, Experiment::kl_monotone},
        };
        CLI::App* active = nullptr;
        for (const auto& [sub, exp] : table) {
            if (sub->parsed()) {
                st.cfg.experiment = exp;
                active = sub;
            }
        }
        if (active == nullptr) {
            std::cerr << "no experiment selected\n";
            return 1;
        }

        // experiment-specific defaults for options the user did not set
        auto defaulted = [&](const char* name) { return active->count(name) == 0; };
        switch (st.cfg.experiment) {
            case Experiment::fig3_current:
                if (defaulted("--grid-min")) st.cfg.grid_min = 0.05;
                if (defaulted("--grid-max")) st.cfg.grid_max = 2.0;
                break;
            case Experiment::fig4_replay:
                if (defaulted("--b")) st.cfg.b = 0.1;
                break;
            case Experiment::fig5_multiqubit:
                if (defaulted("--n-qubits")) st.cfg.n_qubits = 10;
                if (defaulted("--b")) st.cfg.b = 5.0;
                if (defaulted("--time")) st.cfg.total_time = 20.0;
                break;
            case Experiment::ergodicity:
                if (defaulted("--time")) st.cfg.total_time = 1e5;
                break;
            case Experiment::lyapunov:
                if (defaulted("--dt")) st.cfg.dt = 1e-3;
                break;
            case Experiment::kl_monotone:
                if (defaulted("--m-order")) st.cfg.max_order = 64;
                if (defaulted("--time")) st.cfg.total_time = 40.0;
                break;
            default:
                break;
        }
        finish(st, active);

        const maglab::ExperimentOutcome outcome = maglab::run_experiment(st.cfg);
        for (const auto& line : outcome.summary) std::cout << line << '\n';
        return outcome.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const maglab::ParseError& e) {
        std::cerr << "record parse error: " << e.what() << '\n';
        return 1;
    } catch (const maglab::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
