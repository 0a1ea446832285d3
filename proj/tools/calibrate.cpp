// Development-time calibration probe: measures the quantities behind the
// DERIVED pinned thresholds. Not part of the test suite.
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "maglab/collective_spin.hpp"
#include "maglab/estimation.hpp"
#include "maglab/fokker_planck.hpp"
#include "maglab/record.hpp"
#include "maglab/rng.hpp"
#include "maglab/trajectory.hpp"

using namespace maglab;

namespace {
constexpr double kPi = 3.14159265358979323846;

void cf_convergence() {
    std::printf("== continued-fraction convergence (M=500) ==\n");
    for (double b : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        const Complex s100 = quotient_s(0, b, 100);
        const Complex s90 = quotient_s(0, b, 90);
        const Complex s400 = quotient_s(0, b, 400);
        const Complex s2000 = quotient_s(0, b, 2000);
        std::printf("B=%.2f |S0(100)-S0(90)|=%.3e |S0(100)-S0(2000)|=%.3e |S0(400)-S0(2000)|=%.3e\n",
                    b, std::abs(s100 - s90), std::abs(s100 - s2000), std::abs(s400 - s2000));
    }
    for (double b : {0.05, 0.1, 0.5}) {
        for (int m : {100, 300, 480}) {
            const Complex sd = quotient_s(m, b, 100);
            const Complex sdd = quotient_s(m, b, 2000);
            std::printf("B=%.2f m=%d |S(100)-S(2000)|=%.3e\n", b, m, std::abs(sd - sdd));
        }
    }
}

struct DistStats {
    double residual_max = 0.0, flatness = 0.0, min_p = 0.0, integral = 0.0;
    double c_top = 0.0;
};

DistStats dist_stats(double b, int max_order, int depth) {
    const FourierDistribution dist = stationary_distribution(b, max_order, depth);
    DistStats st;
    for (int m = 2; m + 2 <= max_order; m += 2)
        st.residual_max = std::max(
            st.residual_max, std::abs(recursion_q(m, b) * dist.coeff(m) +
                                      recursion_q_plus(m) * dist.coeff(m + 2) +
                                      recursion_q_minus(m) * dist.coeff(m - 2)));
    st.flatness = probability_current(dist).flatness;
    double mn = 1e300;
    for (int i = 0; i < 4096; ++i) {
        const double theta = -kPi + 2.0 * kPi * (i + 0.5) / 4096;
        mn = std::min(mn, dist.density(theta));
    }
    st.min_p = mn;
    st.integral = dist.bin_mass(-kPi, kPi);
    st.c_top = std::abs(dist.coeffs.back());
    return st;
}

void stationary_quality() {
    std::printf("== stationary distribution quality (M=500, depth=100) ==\n");
    for (double b : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        const DistStats st = dist_stats(b, 500, 100);
        std::printf(
            "B=%.2f residual=%.3e flatness=%.3e minP=%.3e |int-1|=%.3e |c_M|=%.3e\n", b,
            st.residual_max, st.flatness, st.min_p, std::abs(st.integral - 1.0), st.c_top);
    }
    std::printf("-- larger truncation for comparison --\n");
    for (double b : {0.05, 0.1}) {
        const DistStats st = dist_stats(b, 3000, 400);
        std::printf("B=%.2f M=3000 depth=400 residual=%.3e flatness=%.3e minP=%.3e |c_M|=%.3e\n",
                    b, st.residual_max, st.flatness, st.min_p, st.c_top);
    }
}

void current_sweep() {
    std::printf("== current sweep ==\n");
    double prev = -1.0;
    double best_mean = -1e300, best_b = 0.0;
    bool monotone = true;
    for (double b = 0.05; b <= 2.0 + 1e-9; b += 0.05) {
        const FourierDistribution dist = stationary_distribution(b, 500, 100);
        const double ratio = probability_current(dist).j_sta / classical_current(b);
        const double mean = stationary_mean_theta(dist);
        if (ratio <= prev) monotone = false;
        prev = ratio;
        if (mean > best_mean) {
            best_mean = mean;
            best_b = b;
        }
    }
    std::printf("monotone=%d ratio(2.0)=%.6f mean peak at B=%.2f (mean=%.5f)\n", monotone, prev,
                best_b, best_mean);
}

void b0_cf_depth() {
    std::printf("== B=0 S_m=-1 depth scaling ==\n");
    for (int m : {0, 10, 40}) {
        for (int depth : {200000, 800000}) {
            const Complex s = quotient_s(m, 0.0, depth);
            std::printf("m=%d depth=%d err=%.3e\n", m, depth, std::abs(s - Complex(-1.0, 0.0)));
        }
    }
}

void kraus_euler_gap() {
    std::printf("== kraus vs euler one-step gap ==\n");
    const CollectiveOps ops = build_collective_ops(1);
    const DensityMatrix rho = coherent_state_x(ops);
    for (double dt : {1e-3, 2.5e-4}) {
        for (double dy : {0.01, std::sqrt(dt)}) {
            const double rz = 2.0 * expect_jz(rho, ops);
            const Matrix k = sme_step_kraus(rho, ops, 1.0, dt, dy).data;
            const Matrix e = sme_step_euler(rho, ops, 1.0, dt, dy - rz * dt).data;
            const double gap = (k - e).cwiseAbs().maxCoeff();
            std::printf("dt=%.2e dy=%.4f gap=%.4e gap/|dt-dy^2|=%.4f\n", dt, dy, gap,
                        gap / std::abs(dt - dy * dy));
        }
    }
}

void ergodicity_tv() {
    std::printf("== ergodic TV distances ==\n");
    for (double b : {0.1, 1.0}) {
        for (double T : {1e3, 1e4, 1e5}) {
            for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
                const ErgodicityResult r = ergodicity_test(b, T, 0.01, seed, 63);
                std::printf("B=%.1f T=%.0e seed=%llu TV=%.4f\n", b, T,
                            static_cast<unsigned long long>(seed), r.tv_distance);
            }
        }
    }
}

void multiqubit_l1() {
    std::printf("== fig5 N=10 cross-replay ==\n");
    const CollectiveOps ops = build_collective_ops(10);
    const DensityMatrix coh = coherent_state_x(ops);
    const DensityMatrix maxs = max_entropy_state(ops);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const WienerRealization n1 = generate_wiener(0.01, 2000, seed, 0);
        const WienerRealization n2 = generate_wiener(0.01, 2000, seed, 1);
        const TrajectoryResult g1 = run_trajectory(coh, ops, 5.0, n1, Integrator::kraus, 100);
        const TrajectoryResult g2 = run_trajectory(maxs, ops, 5.0, n2, Integrator::kraus, 100);
        const TrajectoryResult r1 = run_trajectory(maxs, ops, 5.0, g1.record, Integrator::kraus, 100);
        const TrajectoryResult r2 = run_trajectory(coh, ops, 5.0, g2.record, Integrator::kraus, 100);
        const double purity1 = 1.0 - r1.states.back().data.squaredNorm();
        const double purity2 = 1.0 - g2.states.back().data.squaredNorm();
        const double l1a = (g1.states.back().data - r1.states.back().data).cwiseAbs().sum();
        const double l1b = (r2.states.back().data - g2.states.back().data).cwiseAbs().sum();
        std::printf("seed=%llu purity=(%.2e, %.2e) l1=(%.2e, %.2e)\n",
                    static_cast<unsigned long long>(seed), purity1, purity2, l1a, l1b);
    }
    std::printf("-- N=50, one seed --\n");
    const CollectiveOps ops50 = build_collective_ops(50);
    const DensityMatrix coh50 = coherent_state_x(ops50);
    const DensityMatrix maxs50 = max_entropy_state(ops50);
    const WienerRealization n1 = generate_wiener(0.01, 2000, 1, 0);
    const TrajectoryResult g = run_trajectory(coh50, ops50, 5.0, n1, Integrator::kraus, 100);
    const TrajectoryResult r = run_trajectory(maxs50, ops50, 5.0, g.record, Integrator::kraus, 100);
    std::printf("N=50 purity=%.2e l1=%.2e\n", 1.0 - r.states.back().data.squaredNorm(),
                (g.states.back().data - r.states.back().data).cwiseAbs().sum());
}

void grad_fd() {
    std::printf("== gradient SDE vs FD ==\n");
    for (int n : {1, 5}) {
        for (double T : {100.0, 400.0}) {
            const CollectiveOps ops = build_collective_ops(n);
            const DensityMatrix initial = coherent_state_x(ops);
            const double dt = 0.01, db = 0.02;
            const long steps = static_cast<long>(T / dt);
            const WienerRealization noise =
                generate_wiener(dt, static_cast<std::size_t>(steps), 21 + n);
            const MeasurementRecord rec =
                run_trajectory(initial, ops, 1.0, noise, Integrator::kraus).record;

            EstimatorState est = make_estimator(initial, 1.0);
            EstimatorState lo = make_estimator(initial, 1.0 - 0.5 * db);
            EstimatorState hi = make_estimator(initial, 1.0 + 0.5 * db);
            double lo_g = 1e300, hi_g = -1e300, worst = 0.0, worst_d5 = 0.0;
            double sum_d5 = 0.0;
            for (double dy : rec.increments) {
                sum_d5 += grad_loglik_step(est, ops, dy, dt);
                est = tau_step(est, ops, dt, dy);
                lo = tau_step(lo, ops, dt, dy);
                hi = tau_step(hi, ops, dt, dy);
                const double fd = (hi.loglik - lo.loglik) / db;
                worst = std::max(worst, std::abs(est.loglik_grad - fd));
                worst_d5 = std::max(worst_d5, std::abs(sum_d5 - fd));
                lo_g = std::min(lo_g, est.loglik_grad);
                hi_g = std::max(hi_g, est.loglik_grad);
            }
            std::printf("N=%d T=%.0f range=%.2f exact-vs-fd=%.4f (%.3f%%) d5sum-vs-fd=%.4f (%.3f%%)\n",
                        n, T, hi_g - lo_g, worst, 100.0 * worst / (hi_g - lo_g), worst_d5,
                        100.0 * worst_d5 / (hi_g - lo_g));
        }
    }
}

void scan_integrators() {
    std::printf("== scan argmax: euler vs kraus ==\n");
    const CollectiveOps ops = build_collective_ops(1);
    const DensityMatrix initial = coherent_state_x(ops);
    for (double T : {50.0, 200.0, 400.0}) {
        for (double dt : {0.01, 0.0025}) {
            const long steps = static_cast<long>(T / dt);
            const WienerRealization noise =
                generate_wiener(dt, static_cast<std::size_t>(steps), 17);
            const MeasurementRecord rec =
                run_trajectory(initial, ops, 1.0, noise, Integrator::kraus).record;
            std::vector<double> grid;
            for (double b = -1.5; b <= 1.5 + 1e-9; b += 0.05) grid.push_back(b);
            const ScanResult sk = scan_estimate(rec, ops, grid, initial, Integrator::kraus);
            const ScanResult se = scan_estimate(rec, ops, grid, initial, Integrator::euler);
            std::printf("T=%.0f dt=%.4f kraus argmax=%.2f euler argmax=%.2f\n", T, dt,
                        sk.b_grid[sk.argmax], se.b_grid[se.argmax]);
        }
    }
}

void online_tail() {
    std::printf("== online estimator tails ==\n");
    const CollectiveOps ops = build_collective_ops(1);
    const DensityMatrix initial = coherent_state_x(ops);
    const double dt = 0.01;
    for (std::uint64_t stream = 0; stream < 5; ++stream) {
        const WienerRealization noise = generate_wiener(dt, 40000, 1, stream);
        const TrajectoryResult truth = run_trajectory(initial, ops, 1.0, noise,
                                                      Integrator::kraus, 100);
        const OnlineResult res = online_estimate(truth.record, ops, initial, 0.5, 0.5 * dt, 2.0,
                                                 100);
        double sum = 0.0;
        int count = 0;
        double obs_dev = 0.0;
        for (std::size_t k = 0; k < res.samples.size(); ++k) {
            const auto& s = res.samples[k];
            if (s.t >= 300.0) {
                sum += s.b_est;
                ++count;
                const double tjx = expect_op(truth.states[k], ops.jx);
                const double tjz = expect_jz(truth.states[k], ops);
                obs_dev = std::max(obs_dev, std::max(std::abs(tjx - s.mean_jx),
                                                     std::abs(tjz - s.mean_jz)));
            }
        }
        std::printf("stream=%llu tail_avg=%.4f obs_dev=%.4f\n",
                    static_cast<unsigned long long>(stream), sum / count, obs_dev);
    }
}

void cross_integrators() {
    std::printf("== four integrators, shared realization, T=10 ==\n");
    const CollectiveOps ops = build_collective_ops(1);
    for (double dt : {1e-3, 5e-4}) {
        const long steps = static_cast<long>(10.0 / dt);
        const WienerRealization noise = generate_wiener(dt, static_cast<std::size_t>(steps), 8);
        DensityMatrix re = bloch_density(0.5, 0.0, -0.5);
        DensityMatrix rk = re;
        BlochState bs{0.5, 0.0, -0.5};
        AngularState ps = angular_from_bloch(bs);
        double dev_ek = 0.0, dev_eb = 0.0, dev_bp = 0.0;
        for (long k = 0; k < steps; ++k) {
            const double dw = noise.increments[k];
            const double dy = emit_measurement(rk, ops, dt, dw);
            rk = sme_step_kraus(rk, ops, 1.0, dt, dy);
            re = sme_step_euler(re, ops, 1.0, dt, dw);
            bs = bloch_step(bs, 1.0, dt, dw);
            ps = polar_step(ps, 1.0, dt, dw);
            const BlochState ve = bloch_from_density(re, ops);
            const BlochState vk = bloch_from_density(rk, ops);
            dev_ek = std::max({dev_ek, std::abs(ve.rho_x - vk.rho_x),
                               std::abs(ve.rho_z - vk.rho_z)});
            dev_eb = std::max({dev_eb, std::abs(ve.rho_x - bs.rho_x),
                               std::abs(ve.rho_z - bs.rho_z)});
            const double px = ps.r * std::cos(ps.theta), pz = ps.r * std::sin(ps.theta);
            dev_bp = std::max({dev_bp, std::abs(px - bs.rho_x), std::abs(pz - bs.rho_z)});
        }
        std::printf("dt=%.1e euler-vs-kraus=%.3e euler-vs-bloch=%.3e bloch-vs-polar=%.3e\n", dt,
                    dev_ek, dev_eb, dev_bp);
    }
}

void trapping_seeds() {
    std::printf("== B=0 trapping seeds ==\n");
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        NormalStream rng(seed);
        double theta = 1.0;
        const double dt = 0.01, sigma = std::sqrt(dt);
        bool stayed = true;
        for (int k = 0; k < 100000; ++k) {
            theta = angular_step(theta, 0.0, dt, sigma * rng.next());
            stayed &= (theta > 0.0 && theta < kPi);
        }
        std::printf("seed=%llu stayed=%d final=%.3f\n",
                    static_cast<unsigned long long>(seed), stayed, theta);
    }
}

void rho_y_decay() {
    std::printf("== rho_y ensemble decay ==\n");
    const double dt = 1e-3;
    const int runs = 10000;
    const long steps = 5000;
    std::vector<double> sum(steps + 1, 0.0), sumsq(steps + 1, 0.0);
    for (int r = 0; r < runs; ++r) {
        NormalStream rng(77, r);
        BlochState s{0.5, 0.5, -0.5};
        const double sigma = std::sqrt(dt);
        sum[0] += s.rho_y;
        sumsq[0] += s.rho_y * s.rho_y;
        for (long k = 1; k <= steps; ++k) {
            s = bloch_step(s, 1.0, dt, sigma * rng.next());
            sum[k] += s.rho_y;
            sumsq[k] += s.rho_y * s.rho_y;
        }
    }
    for (long k : {1000L, 3000L, 5000L}) {
        const double mean = sum[k] / runs;
        const double var = sumsq[k] / runs - mean * mean;
        const double se = std::sqrt(var / runs);
        const double expected = 0.5 * std::exp(-0.5 * k * dt);
        std::printf("t=%.0f mean=%.6f expected=%.6f |diff|/se=%.2f\n", k * dt, mean, expected,
                    std::abs(mean - expected) / se);
    }
}

void fig1_fig4_margins() {
    std::printf("== fig1/fig4 margins over seeds ==\n");
    const CollectiveOps ops = build_collective_ops(1);
    const std::array<BlochState, 4> inits{BlochState{0.5, 0, -0.5}, BlochState{0.5, 0, 0.5},
                                          BlochState{-0.5, 0, 0.5}, BlochState{-0.5, 0, -0.5}};
    for (double b : {0.1, 1.0}) {
        double worst_defect = 0.0, worst_spread = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const WienerRealization noise = generate_wiener(0.01, 40000, seed);
            std::array<TrajectoryResult, 4> runs;
            for (int i = 0; i < 4; ++i)
                runs[i] = run_trajectory(bloch_density(inits[i].rho_x, 0, inits[i].rho_z), ops, b,
                                         noise, Integrator::kraus, 40000);
            const BlochState v0 = bloch_from_density(runs[0].states.back(), ops);
            const double th0 = angular_from_bloch(v0).theta;
            for (int i = 0; i < 4; ++i) {
                const BlochState v = bloch_from_density(runs[i].states.back(), ops);
                worst_defect = std::max(worst_defect,
                                        1.0 - (v.rho_x * v.rho_x + v.rho_y * v.rho_y +
                                               v.rho_z * v.rho_z));
                worst_spread =
                    std::max(worst_spread, circular_distance(angular_from_bloch(v).theta, th0));
            }
        }
        std::printf("B=%.1f worst purity defect=%.3e worst theta spread=%.3e\n", b, worst_defect,
                    worst_spread);
    }
    // fig4: replay distances
    double worst_dist = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const WienerRealization noise = generate_wiener(0.01, 40000, seed);
        const DensityMatrix ref0 = bloch_density(0.5, 0.0, -0.5);
        const TrajectoryResult gen = run_trajectory(ref0, ops, 0.1, noise, Integrator::kraus, 40000);
        const TrajectoryResult ref = run_trajectory(ref0, ops, 0.1, gen.record, Integrator::kraus, 40000);
        for (const auto& init : {BlochState{0.5, 0, 0.5}, BlochState{-0.5, 0, 0.5},
                                 BlochState{-0.5, 0, -0.5}}) {
            const TrajectoryResult rep = run_trajectory(
                bloch_density(init.rho_x, 0, init.rho_z), ops, 0.1, gen.record,
                Integrator::kraus, 40000);
            const BlochState a = bloch_from_density(rep.states.back(), ops);
            const BlochState r = bloch_from_density(ref.states.back(), ops);
            const double d = std::sqrt((a.rho_x - r.rho_x) * (a.rho_x - r.rho_x) +
                                       (a.rho_y - r.rho_y) * (a.rho_y - r.rho_y) +
                                       (a.rho_z - r.rho_z) * (a.rho_z - r.rho_z));
            worst_dist = std::max(worst_dist, d);
        }
    }
    std::printf("fig4 worst final replay distance=%.3e\n", worst_dist);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string which = argc > 1 ? argv[1] : "all";
    if (which == "cf" || which == "all") cf_convergence();
    if (which == "dist" || which == "all") stationary_quality();
    if (which == "sweep" || which == "all") current_sweep();
    if (which == "b0" || which == "all") b0_cf_depth();
    if (which == "gap" || which == "all") kraus_euler_gap();
    if (which == "tv" || which == "all") ergodicity_tv();
    if (which == "l1" || which == "all") multiqubit_l1();
    if (which == "grad" || which == "all") grad_fd();
    if (which == "scan" || which == "all") scan_integrators();
    if (which == "online" || which == "all") online_tail();
    if (which == "cross" || which == "all") cross_integrators();
    if (which == "trap" || which == "all") trapping_seeds();
    if (which == "rhoy" || which == "all") rho_y_decay();
    if (which == "margins" || which == "all") fig1_fig4_margins();
    return 0;
}
