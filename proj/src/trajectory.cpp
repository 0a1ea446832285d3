#include "maglab/trajectory.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "maglab/errors.hpp"
#include "maglab/rng.hpp"

namespace maglab {

namespace {
constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kI(0.0, 1.0);
}  // namespace

double wrap_angle(double theta) {
    double w = std::remainder(theta, 2.0 * kPi);  // in [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

double circular_distance(double a, double b) {
    return std::abs(std::remainder(a - b, 2.0 * kPi));
}

BlochState bloch_from_density(const DensityMatrix& rho, const CollectiveOps& ops) {
    if (rho.dim() != 2 || ops.dim() != 2)
        throw std::invalid_argument("bloch_from_density: single-qubit states only");
    return BlochState{2.0 * expect_op(rho, ops.jx), 2.0 * expect_op(rho, ops.jy),
                      2.0 * expect_jz(rho, ops)};
}

AngularState angular_from_bloch(const BlochState& s) {
    return AngularState{std::hypot(s.rho_x, s.rho_z), std::atan2(s.rho_z, s.rho_x)};
}

DensityMatrix sme_step_euler(const DensityMatrix& rho, const CollectiveOps& ops, double b,
                             double dt, double dw) {
    const Matrix& r = rho.data;
    const Matrix& jy = ops.jy;
    const Matrix& jz = ops.jz;

    const Matrix jzr = jz * r;
    const Matrix rjz = r * jz;
    const double mz = expect_jz(rho, ops);

    Matrix drho = (kI * b * dt) * (jy * r - r * jy);
    drho += dt * (jz * rjz - 0.5 * (jz * jzr + rjz * jz));
    drho += dw * (jzr + rjz - (2.0 * mz) * r);
    return DensityMatrix{r + drho};
}

namespace {

// Clip tiny negative eigenvalues after a Kraus step; harder negativity means
// the evolution has genuinely lost positivity and is an error.
DensityMatrix repair_positivity(Matrix m) {
    m = 0.5 * (m + m.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min < -1e-8)
        throw NumericalError("kraus step lost positivity: min eigenvalue " +
                             std::to_string(lam_min));
    if (lam_min < 0.0) {
        const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        m = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
        m /= m.trace().real();
        m = 0.5 * (m + m.adjoint()).eval();
    }
    return DensityMatrix{std::move(m)};
}

struct KrausUpdate {
    DensityMatrix rho;
    double log_norm = 0.0;
};

// Shared per-run pieces of Omega(dY) = base + dy jz, base = I + ib jy dt - jz^2 dt/2.
// The +ib sign pairs this Omega with the drho = ib[jy, rho]dt master equation
// (the -iB of the published operator refers to the opposite field convention).
struct KrausWorkspace {
    const CollectiveOps& ops;
    double dt;
    Matrix base;

    KrausWorkspace(const CollectiveOps& ops_, double b, double dt_) : ops(ops_), dt(dt_) {
        base = Matrix::Identity(ops.dim(), ops.dim()) + (kI * b * dt) * ops.jy -
               (0.5 * dt) * (ops.jz * ops.jz);
    }

    KrausUpdate step(const DensityMatrix& rho, double dy) const {
        const Matrix omega = base + dy * ops.jz;
        Matrix m = omega * rho.data * omega.adjoint();
        const double norm = std::real(m.trace());
        if (!(norm > 1e-300))
            throw NumericalError("kraus step: vanishing norm (record inconsistent with state)");
        m /= norm;
        return KrausUpdate{repair_positivity(std::move(m)), std::log(norm)};
    }
};

}  // namespace

DensityMatrix sme_step_kraus(const DensityMatrix& rho, const CollectiveOps& ops, double b,
                             double dt, double dy) {
    return KrausWorkspace(ops, b, dt).step(rho, dy).rho;
}

double emit_measurement(const DensityMatrix& rho, const CollectiveOps& ops, double dt, double dw) {
    return 2.0 * expect_jz(rho, ops) * dt + dw;
}

BlochState bloch_step(const BlochState& s, double b, double dt, double dw) {
    return BlochState{
        s.rho_x + (-b * s.rho_z - 0.5 * s.rho_x) * dt - s.rho_z * s.rho_x * dw,
        s.rho_y - 0.5 * s.rho_y * dt - s.rho_z * s.rho_y * dw,
        s.rho_z + b * s.rho_x * dt + (1.0 - s.rho_z * s.rho_z) * dw,
    };
}

AngularState polar_step(const AngularState& s, double b, double dt, double dw) {
    if (!(s.r >= 1e-12)) throw std::domain_error("polar_step: r ~ 0, theta undefined");
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    const double dr = -0.5 * c * c * (s.r - 1.0 / s.r) * dt + sn * (1.0 - s.r * s.r) * dw;
    const double dtheta = (b + 0.25 * std::sin(2.0 * s.theta)) * dt + (c / s.r) * dw;
    return AngularState{s.r + dr, wrap_angle(s.theta + dtheta)};
}

double angular_step(double theta, double b, double dt, double dw) {
    return wrap_angle(theta + (b + 0.25 * std::sin(2.0 * theta)) * dt + std::cos(theta) * dw);
}

namespace {

enum class DriveKind { wiener, replay };

TrajectoryResult run_impl(const DensityMatrix& initial, const CollectiveOps& ops, double b,
                          const std::vector<double>& increments, double dt, DriveKind kind,
                          Integrator integrator, int stride,
                          const std::optional<double>& b_true) {
    if (!(dt > 0.0)) throw std::invalid_argument("run_trajectory: dt must be > 0");
    if (stride < 1) throw std::invalid_argument("run_trajectory: stride must be >= 1");

    const std::size_t steps = increments.size();
    TrajectoryResult out;
    out.record.dt = dt;
    out.record.b_true = b_true;
    out.record.increments.reserve(steps);
    out.times.reserve(steps / stride + 2);
    out.states.reserve(steps / stride + 2);
    out.times.push_back(0.0);
    out.states.push_back(initial);

    const KrausWorkspace kraus(ops, b, dt);
    DensityMatrix rho = initial;
    for (std::size_t k = 0; k < steps; ++k) {
        try {
            double dy, dw;
            if (kind == DriveKind::wiener) {
                dw = increments[k];
                dy = emit_measurement(rho, ops, dt, dw);
            } else {
                dy = increments[k];
                dw = dy - 2.0 * expect_jz(rho, ops) * dt;
            }
            rho = (integrator == Integrator::kraus) ? kraus.step(rho, dy).rho
                                                    : sme_step_euler(rho, ops, b, dt, dw);
            out.record.increments.push_back(dy);
        } catch (const NumericalError& e) {
            throw StepError(k, e.what());
        }
        if ((k + 1) % static_cast<std::size_t>(stride) == 0 || k + 1 == steps) {
            out.times.push_back(static_cast<double>(k + 1) * dt);
            out.states.push_back(rho);
        }
    }
    return out;
}

}  // namespace

TrajectoryResult run_trajectory(const DensityMatrix& initial, const CollectiveOps& ops, double b,
                                const WienerRealization& drive, Integrator integrator,
                                int stride) {
    return run_impl(initial, ops, b, drive.increments, drive.dt, DriveKind::wiener, integrator,
                    stride, b);
}

TrajectoryResult run_trajectory(const DensityMatrix& initial, const CollectiveOps& ops, double b,
                                const MeasurementRecord& record, Integrator integrator,
                                int stride) {
    return run_impl(initial, ops, b, record.increments, record.dt, DriveKind::replay, integrator,
                    stride, record.b_true);
}

std::vector<PuritySample> purity_diagnostics(const TrajectoryResult& traj,
                                             const CollectiveOps& ops) {
    if (traj.states.empty()) throw std::invalid_argument("purity_diagnostics: empty series");
    std::vector<PuritySample> out;
    out.reserve(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const DensityMatrix& rho = traj.states[i];
        PuritySample s;
        s.t = traj.times[i];
        s.lin_entropy = 1.0 - rho.data.squaredNorm();  // tr[rho^2] for Hermitian rho
        if (rho.dim() == 2) {
            const BlochState v = bloch_from_density(rho, ops);
            s.bloch_defect = 1.0 - (v.rho_x * v.rho_x + v.rho_y * v.rho_y + v.rho_z * v.rho_z);
            s.rho_y = v.rho_y;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<LyapunovPoint> lyapunov_check(const std::vector<double>& thetas, double dt,
                                          int ensemble, std::uint64_t seed) {
    if (ensemble < 2) throw std::invalid_argument("lyapunov_check: ensemble must be >= 2");
    std::vector<LyapunovPoint> out;
    out.reserve(thetas.size());
    const double sigma = std::sqrt(dt);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        NormalStream normals(seed, i);
        const double theta = thetas[i];
        const double v0 = std::abs(std::cos(theta));
        double sum = 0.0, sum_sq = 0.0;
        for (int k = 0; k < ensemble; ++k) {
            const double theta1 = angular_step(theta, 0.0, dt, sigma * normals.next());
            const double dv = std::abs(std::cos(theta1)) - v0;
            sum += dv;
            sum_sq += dv * dv;
        }
        const double mean = sum / ensemble;
        const double var = (sum_sq - ensemble * mean * mean) / (ensemble - 1);
        out.push_back(LyapunovPoint{theta, v0, mean, std::sqrt(std::max(var, 0.0) / ensemble),
                                    -0.5 * v0 * dt});
    }
    return out;
}

}  // namespace maglab
