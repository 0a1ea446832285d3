#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maglab/collective_spin.hpp"
#include "maglab/record.hpp"

namespace maglab {

// Single-qubit reductions. Bloch components rho_alpha = 2 tr[rho j_alpha];
// polar variables rho_x + i rho_z = r e^{i theta}.
struct BlochState {
    double rho_x = 0.0, rho_y = 0.0, rho_z = 0.0;
};

struct AngularState {
    double r = 1.0;
    double theta = 0.0;
};

double wrap_angle(double theta);                  // into (-pi, pi]
double circular_distance(double a, double b);     // geodesic on the circle

BlochState bloch_from_density(const DensityMatrix& rho, const CollectiveOps& ops);
AngularState angular_from_bloch(const BlochState& s);

// One Euler-Maruyama step of the full-matrix SME,
//   drho = iB[jy,rho] dt + D[jz]rho dt + (jz rho + rho jz - 2<jz>rho) dW.
// Trace is preserved to O(dt^2); positivity is NOT guaranteed.
DensityMatrix sme_step_euler(const DensityMatrix& rho, const CollectiveOps& ops, double b,
                             double dt, double dw);

// One Kraus step with Omega(dY) = I - iB jy dt - jz^2 dt/2 + jz dY:
// rho -> Omega rho Omega^dag, renormalized, hermitized, and with eigenvalues
// in (-1e-8, 0) clipped to zero. Throws NumericalError on vanishing norm or
// eigenvalues below -1e-8.
DensityMatrix sme_step_kraus(const DensityMatrix& rho, const CollectiveOps& ops, double b,
                             double dt, double dy);

// dY = 2 tr[rho jz] dt + dW.
double emit_measurement(const DensityMatrix& rho, const CollectiveOps& ops, double dt, double dw);

// Component form of the single-qubit SME (exactly the three-component Euler
// update) and its polar/pure-state reductions.
BlochState bloch_step(const BlochState& s, double b, double dt, double dw);
AngularState polar_step(const AngularState& s, double b, double dt, double dw);  // needs r > 0
double angular_step(double theta, double b, double dt, double dw);

enum class Integrator { euler, kraus };

struct TrajectoryResult {
    std::vector<double> times;          // sample times, always includes 0 and T
    std::vector<DensityMatrix> states;  // states at the sample times
    MeasurementRecord record;           // emitted (generation) or consumed (replay) dY
};

// Drive with a Wiener realization: emits dY_k from the current state and
// advances with the chosen integrator. Errors carry the failing step index.
TrajectoryResult run_trajectory(const DensityMatrix& initial, const CollectiveOps& ops, double b,
                                const WienerRealization& drive, Integrator integrator,
                                int stride = 100);

// Replay a stored record: the effective noise is dW = dY - 2 tr[rho jz] dt
// with the replaying state's own expectation.
TrajectoryResult run_trajectory(const DensityMatrix& initial, const CollectiveOps& ops, double b,
                                const MeasurementRecord& record, Integrator integrator,
                                int stride = 100);

// Purity diagnostics per sample: 1 - tr[rho^2] always; the Bloch-vector
// defect 1 - |rho|^2 and rho_y only for single-qubit series.
struct PuritySample {
    double t = 0.0;
    double lin_entropy = 0.0;
    std::optional<double> bloch_defect;
    std::optional<double> rho_y;
};
std::vector<PuritySample> purity_diagnostics(const TrajectoryResult& traj,
                                             const CollectiveOps& ops);

// Ensemble check of the B=0 Lyapunov function v = |cos theta|: the mean
// one-step increment of v should match -|cos theta| dt / 2.
struct LyapunovPoint {
    double theta = 0.0;
    double v = 0.0;
    double mean_dv = 0.0;
    double se_dv = 0.0;       // standard error of mean_dv
    double predicted_dv = 0.0;
};
std::vector<LyapunovPoint> lyapunov_check(const std::vector<double>& thetas, double dt,
                                          int ensemble, std::uint64_t seed);

}  // namespace maglab
