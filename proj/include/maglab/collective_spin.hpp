#pragma once

#include <Eigen/Dense>
#include <complex>

namespace maglab {

using Matrix = Eigen::MatrixXcd;

// Collective angular-momentum operators on the symmetric (Dicke) subspace of
// N qubits: dimension N+1, total spin J = N/2, basis |J,m> with m = -J..J
// (so jz is diagonal with entries -J..J in index order). hbar = 1.
// Immutable after construction; safe to share across workers.
struct CollectiveOps {
    int n_qubits = 0;
    Matrix jx, jy, jz;

    int dim() const { return n_qubits + 1; }
};

// Ladder-operator construction of the spin-J irrep. Rejects n_qubits < 1.
CollectiveOps build_collective_ops(int n_qubits);

// Density matrix on the Dicke subspace. Contracts: Hermitian (1e-10), unit
// trace (1e-10), min eigenvalue >= -1e-8.
struct DensityMatrix {
    Matrix data;

    int dim() const { return static_cast<int>(data.rows()); }
};

// Spin-coherent state along +x: the Jx eigenstate with eigenvalue N/2.
DensityMatrix coherent_state_x(const CollectiveOps& ops);

// Identity / (N+1) on the Dicke subspace.
DensityMatrix max_entropy_state(const CollectiveOps& ops);

// Single-qubit state from Bloch components, rho = (I + rho.sigma)/2 in the
// m = -1/2, +1/2 basis used by build_collective_ops(1).
DensityMatrix bloch_density(double rho_x, double rho_y, double rho_z);

// <jz> = tr[rho jz]; jz is diagonal so this is O(dim).
double expect_jz(const DensityMatrix& rho, const CollectiveOps& ops);
double expect_op(const DensityMatrix& rho, const Matrix& op);

// Contract diagnostics (used by tests and the positivity repair).
double hermiticity_defect(const Matrix& m);  // max_ij |M - M^dag|
double min_eigenvalue(const Matrix& hermitian);
bool is_valid_density(const DensityMatrix& rho, double herm_tol = 1e-10,
                      double trace_tol = 1e-10, double eig_floor = -1e-8);

}  // namespace maglab
