#ifndef DFS_MATRIX_HPP
#define DFS_MATRIX_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dfs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Thrown when an operation would exceed the configured full-space
/// dimension cap (default 2^12, override via DFS_FORGE_DIM_CAP).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Current full-space dimension cap.
long dimension_cap();
void set_dimension_cap(long cap);
void check_dimension(long dim);
/// 2^n after a cap check; throws on n < 1 or cap overflow.
long check_qubits(int n);

/// Kronecker (tensor) product. Throws ResourceLimitError if the product
/// dimension exceeds the cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// AB - BA for equal-dimension square matrices.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix exponential e^A. Hermitian and anti-Hermitian inputs go through
/// an eigendecomposition; everything else uses Pade-13 scaling-and-squaring.
ComplexMatrix mat_exp(const ComplexMatrix& a);

/// d(U,V) = sqrt(1 - Re Tr(U^dag V) / d), in [0, sqrt(2)].
double trace_distance(const ComplexMatrix& u, const ComplexMatrix& v);

/// Hilbert-Schmidt inner product Tr(A^dag B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian H with U = exp(iH) and eigenphases on the principal
/// branch (-pi, pi]. Throws if U is not unitary to 1e-9.
ComplexMatrix matrix_log_unitary(const ComplexMatrix& u);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

// Pauli matrices and the 2x2 identity.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity2();

}  // namespace dfs

#endif
