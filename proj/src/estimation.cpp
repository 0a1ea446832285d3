#include "maglab/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "maglab/errors.hpp"

namespace maglab {

namespace {
const std::complex<double> kI(0.0, 1.0);

double trace_m(const Matrix& x, const CollectiveOps& ops) {
    // tr[M(x)] = 2 tr[jz x] for Hermitian x; jz is diagonal.
    double s = 0.0;
    for (int k = 0; k < x.rows(); ++k) s += std::real(x(k, k)) * std::real(ops.jz(k, k));
    return 2.0 * s;
}

Matrix clip_negative_eigenvalues(Matrix m) {
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min < -1e-8)
        throw NumericalError("estimator state lost positivity: min eigenvalue " +
                             std::to_string(lam_min));
    if (lam_min < 0.0) {
        const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        m = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
        m /= m.trace().real();
        m = 0.5 * (m + m.adjoint()).eval();
    }
    return m;
}

}  // namespace

EstimatorState make_estimator(const DensityMatrix& initial, double b0) {
    EstimatorState est;
    est.rho_est = initial;
    est.tau = Matrix::Zero(initial.dim(), initial.dim());
    est.b_est = b0;
    return est;
}

double loglik_step(const DensityMatrix& rho, const CollectiveOps& ops, double dy, double dt) {
    const double trm = trace_m(rho.data, ops);
    return trm * (dy - 0.5 * trm * dt);
}

EstimatorState tau_step(const EstimatorState& est, const CollectiveOps& ops, double dt,
                        double dy) {
    const int n = est.rho_est.dim();
    // same field convention as the trajectory Kraus step: Omega(b, dY)
    const Matrix omega = Matrix::Identity(n, n) + (kI * est.b_est * dt) * ops.jy -
                         (0.5 * dt) * (ops.jz * ops.jz) + dy * ops.jz;
    const Matrix omega_b = (kI * dt) * ops.jy;  // d Omega / db

    Matrix m = omega * est.rho_est.data * omega.adjoint();
    const double norm = std::real(m.trace());
    if (!(norm > 1e-300))
        throw NumericalError("tau step: vanishing norm (record inconsistent with state)");

    const Matrix cross = omega_b * est.rho_est.data * omega.adjoint();
    Matrix tau_next = (cross + cross.adjoint() + omega * est.tau * omega.adjoint()) / norm;
    tau_next = 0.5 * (tau_next + tau_next.adjoint()).eval();

    EstimatorState out;
    out.rho_est = DensityMatrix{clip_negative_eigenvalues(m / norm)};
    out.tau = std::move(tau_next);
    out.b_est = est.b_est;
    out.loglik = est.loglik + std::log(norm);
    out.loglik_grad = std::real(out.tau.trace());
    return out;
}

double grad_loglik_step(const EstimatorState& est, const CollectiveOps& ops, double dy,
                        double dt) {
    const double trm_rho = trace_m(est.rho_est.data, ops);
    const double trm_tau = trace_m(est.tau, ops);
    const double tr_tau = std::real(est.tau.trace());
    return (trm_tau - trm_rho * tr_tau) * (dy - trm_rho * dt);
}

ScanResult scan_estimate(const MeasurementRecord& record, const CollectiveOps& ops,
                         const std::vector<double>& b_grid, const DensityMatrix& initial,
                         Integrator integrator) {
    if (record.increments.empty())
        throw std::invalid_argument("scan_estimate: empty record (likelihood is flat)");
    if (b_grid.empty()) throw std::invalid_argument("scan_estimate: empty field grid");

    ScanResult out;
    out.b_grid = b_grid;
    out.loglik.reserve(b_grid.size());
    const double dt = record.dt;

    for (std::size_t gi = 0; gi < b_grid.size(); ++gi) {
        const double b = b_grid[gi];
        double loglik = 0.0;
        try {
            if (integrator == Integrator::kraus) {
                EstimatorState est = make_estimator(initial, b);
                for (std::size_t k = 0; k < record.increments.size(); ++k) {
                    try {
                        est = tau_step(est, ops, dt, record.increments[k]);
                    } catch (const NumericalError& e) {
                        throw StepError(k, e.what());
                    }
                }
                loglik = est.loglik;
            } else {
                // the raw Euler scheme has no renormalization; a replay at a
                // strongly mismatched field can leave the Bloch ball and blow
                // up (d rho_z ~ rho_z^3 dt feedback), so guard for overflow
                DensityMatrix rho = initial;
                for (std::size_t k = 0; k < record.increments.size(); ++k) {
                    try {
                        const double dy = record.increments[k];
                        loglik += loglik_step(rho, ops, dy, dt);
                        const double dw = dy - 2.0 * expect_jz(rho, ops) * dt;
                        rho = sme_step_euler(rho, ops, b, dt, dw);
                        if (!std::isfinite(loglik) || std::abs(loglik) > 1e12)
                            throw NumericalError("euler replay diverged");
                    } catch (const NumericalError& e) {
                        throw StepError(k, e.what());
                    }
                }
            }
        } catch (const StepError& e) {
            throw NumericalError("scan_estimate: replay failed at grid point " +
                                 std::to_string(gi) + " (B = " + std::to_string(b) +
                                 "): " + e.what());
        }
        out.loglik.push_back(loglik);
    }

    const auto it = std::max_element(out.loglik.begin(), out.loglik.end());
    out.argmax = static_cast<std::size_t>(it - out.loglik.begin());
    const double peak = *it;
    for (double& v : out.loglik) v -= peak;
    return out;
}

OnlineResult online_estimate(const MeasurementRecord& record, const CollectiveOps& ops,
                             const DensityMatrix& initial, double b0, double gamma, double b_max,
                             int stride) {
    if (!(gamma > 0.0)) throw std::invalid_argument("online_estimate: gamma must be > 0");
    if (!(b0 >= 0.0 && b0 <= b_max))
        throw std::invalid_argument("online_estimate: b0 must lie in [0, b_max]");
    if (stride < 1) throw std::invalid_argument("online_estimate: stride must be >= 1");

    const double dt = record.dt;
    EstimatorState est = make_estimator(initial, b0);

    OnlineResult out;
    auto sample = [&](double t) {
        out.samples.push_back(OnlineSample{t, est.b_est, est.loglik, est.loglik_grad,
                                           expect_op(est.rho_est, ops.jx),
                                           expect_jz(est.rho_est, ops)});
    };
    sample(0.0);

    const std::size_t steps = record.increments.size();
    for (std::size_t k = 0; k < steps; ++k) {
        try {
            const double dy = record.increments[k];
            const double dlb = grad_loglik_step(est, ops, dy, dt);
            est = tau_step(est, ops, dt, dy);
            est.b_est = std::clamp(est.b_est + gamma * dlb, 0.0, b_max);
        } catch (const NumericalError& e) {
            throw StepError(k, e.what());
        }
        if ((k + 1) % static_cast<std::size_t>(stride) == 0 || k + 1 == steps)
            sample(static_cast<double>(k + 1) * dt);
    }
    out.final_state = std::move(est);
    return out;
}

}  // namespace maglab
