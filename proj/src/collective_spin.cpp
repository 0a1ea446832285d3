#include "maglab/collective_spin.hpp"

#include <cmath>
#include <stdexcept>

namespace maglab {

CollectiveOps build_collective_ops(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("build_collective_ops: n_qubits must be >= 1");
    const int dim = n_qubits + 1;
    const double j = 0.5 * n_qubits;

    Matrix jplus = Matrix::Zero(dim, dim);
    Matrix jz = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = -j + k;
        jz(k, k) = m;
        if (k + 1 < dim) jplus(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }

    CollectiveOps ops;
    ops.n_qubits = n_qubits;
    ops.jz = std::move(jz);
    ops.jx = 0.5 * (jplus + jplus.adjoint());
    ops.jy = std::complex<double>(0.0, -0.5) * (jplus - jplus.adjoint());
    return ops;
}

DensityMatrix coherent_state_x(const CollectiveOps& ops) {
    // |+x>^(x)N restricted to the symmetric sector: binomial amplitudes in the
    // jz basis, amplitude_k = sqrt(C(N,k)) / 2^(N/2). Log-space for large N.
    const int n = ops.n_qubits;
    const int dim = ops.dim();
    Eigen::VectorXcd psi(dim);
    const double log2 = std::log(2.0);
    for (int k = 0; k < dim; ++k) {
        const double log_amp =
            0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) -
            0.5 * n * log2;
        psi(k) = std::exp(log_amp);
    }
    psi.normalize();
    return DensityMatrix{psi * psi.adjoint()};
}

DensityMatrix max_entropy_state(const CollectiveOps& ops) {
    const int dim = ops.dim();
    return DensityMatrix{Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

DensityMatrix bloch_density(double rho_x, double rho_y, double rho_z) {
    Matrix m(2, 2);
    const std::complex<double> i(0.0, 1.0);
    m(0, 0) = 0.5 * (1.0 - rho_z);
    m(1, 1) = 0.5 * (1.0 + rho_z);
    m(0, 1) = 0.5 * (rho_x + i * rho_y);
    m(1, 0) = 0.5 * (rho_x - i * rho_y);
    return DensityMatrix{std::move(m)};
}

double expect_jz(const DensityMatrix& rho, const CollectiveOps& ops) {
    double s = 0.0;
    for (int k = 0; k < rho.dim(); ++k)
        s += std::real(rho.data(k, k)) * std::real(ops.jz(k, k));
    return s;
}

double expect_op(const DensityMatrix& rho, const Matrix& op) {
    return std::real((rho.data * op).trace());
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_valid_density(const DensityMatrix& rho, double herm_tol, double trace_tol,
                      double eig_floor) {
    if (rho.data.rows() != rho.data.cols() || rho.data.rows() < 1) return false;
    if (hermiticity_defect(rho.data) > herm_tol) return false;
    if (std::abs(rho.data.trace() - std::complex<double>(1.0, 0.0)) > trace_tol) return false;
    return min_eigenvalue(rho.data) >= eig_floor;
}

}  // namespace maglab
