#pragma once

#include <cstddef>
#include <vector>

#include "maglab/collective_spin.hpp"
#include "maglab/record.hpp"
#include "maglab/trajectory.hpp"

namespace maglab {

// Conditioned state + auxiliary matrix for likelihood-gradient estimation.
// tau_t = d_B(unnormalized rho)/likelihood; tr[tau_t] is the exact gradient
// of the accumulated log-likelihood of the discrete Kraus chain, so
// loglik_grad == tr[tau] holds to roundoff at every step.
struct EstimatorState {
    DensityMatrix rho_est;
    Matrix tau;
    double b_est = 0.0;
    double loglik = 0.0;       // accumulated log tr[Omega rho Omega^dag]
    double loglik_grad = 0.0;  // accumulated l^B = tr[tau]
};

EstimatorState make_estimator(const DensityMatrix& initial, double b0);

// Ito-form log-likelihood increment, dl = tr[M(rho)] (dY - tr[M(rho)] dt / 2)
// with M(rho) = jz rho + rho jz.
double loglik_step(const DensityMatrix& rho, const CollectiveOps& ops, double dy, double dt);

// Joint Kraus update of (rho_est, tau) with Omega(b_est, dY) and
// Omega_B = -i jy dt; also accumulates loglik and refreshes loglik_grad.
EstimatorState tau_step(const EstimatorState& est, const CollectiveOps& ops, double dt, double dy);

// Ito-form gradient increment (Eq. of the likelihood-gradient SDE):
//   dl^B = (tr[M(tau)] - tr[M(rho)] tr[tau]) (dY - tr[M(rho)] dt).
double grad_loglik_step(const EstimatorState& est, const CollectiveOps& ops, double dy, double dt);

// Replay the record on a grid of candidate fields and accumulate the
// log-likelihood of each; the curve is shifted so max l = 0.
struct ScanResult {
    std::vector<double> b_grid;
    std::vector<double> loglik;
    std::size_t argmax = 0;
};
ScanResult scan_estimate(const MeasurementRecord& record, const CollectiveOps& ops,
                         const std::vector<double>& b_grid, const DensityMatrix& initial,
                         Integrator integrator = Integrator::kraus);

// Simultaneous state/field update: per step, dl^B from the current estimator,
// Kraus update at B_est(t), then B_est += gamma dl^B clipped to [0, b_max].
struct OnlineSample {
    double t = 0.0;
    double b_est = 0.0;
    double loglik = 0.0;
    double loglik_grad = 0.0;
    double mean_jx = 0.0;  // tr[rho_est jx]
    double mean_jz = 0.0;  // tr[rho_est jz]
};
struct OnlineResult {
    std::vector<OnlineSample> samples;
    EstimatorState final_state;
};
OnlineResult online_estimate(const MeasurementRecord& record, const CollectiveOps& ops,
                             const DensityMatrix& initial, double b0, double gamma, double b_max,
                             int stride = 100);

}  // namespace maglab
