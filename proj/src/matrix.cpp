#include "dfs/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include <unsupported/Eigen/MatrixFunctions>

namespace dfs {

namespace {

long g_dim_cap = [] {
  if (const char* env = std::getenv("DFS_FORGE_DIM_CAP")) {
    long v = std::atol(env);
    if (v >= 2) return v;
  }
  return 4096L;
}();

}  // namespace

long dimension_cap() { return g_dim_cap; }

void set_dimension_cap(long cap) {
  if (cap < 2) throw std::invalid_argument("dimension cap must be >= 2");
  g_dim_cap = cap;
}

void check_dimension(long dim) {
  if (dim > g_dim_cap) {
    throw ResourceLimitError("dimension " + std::to_string(dim) +
                             " exceeds cap " + std::to_string(g_dim_cap));
  }
}

long check_qubits(int n) {
  if (n < 1 || n > 62) throw std::invalid_argument("qubit count out of range");
  const long dim = 1L << n;
  check_dimension(dim);
  return dim;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_dimension(a.rows() * b.rows());
  check_dimension(a.cols() * b.cols());
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatchError("commutator needs equal square matrices");
  return a * b - b * a;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix g = u.adjoint() * u;
  g -= ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(g) <= tol;
}

ComplexMatrix mat_exp(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw DimensionMismatchError("mat_exp needs a square matrix");
  const double scale = std::max(1.0, max_abs(a));
  // i*t*(Hermitian) inputs: exponentiate through the spectral decomposition.
  if (max_abs(a + a.adjoint()) <= 1e-12 * scale) {
    ComplexMatrix h = Complex(0, -1) * a;  // Hermitian
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
      phases(k) = std::exp(Complex(0, es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }
  if (max_abs(a - a.adjoint()) <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
    Eigen::VectorXd vals = es.eigenvalues().array().exp();
    return es.eigenvectors() * vals.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
  }
  return a.exp();  // Pade-13 with scaling and squaring
}

double trace_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw DimensionMismatchError("trace_distance needs equal square matrices");
  const double d = static_cast<double>(u.rows());
  // For unitary u, v: 1 - Re Tr(u† v)/d = |u - v|_F^2 / (2d). The Frobenius
  // form avoids the catastrophic cancellation of the trace form near zero.
  return std::sqrt((u - v).squaredNorm() / (2.0 * d));
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatchError("hs_inner needs equal-dimension matrices");
  return (a.adjoint() * b).trace();
}

ComplexMatrix matrix_log_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u))
    throw std::invalid_argument("matrix_log_unitary: input is not unitary");
  // A unitary matrix is normal, so its Schur form is diagonal up to
  // roundoff; the Schur vectors give an orthonormal eigenbasis.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& q = schur.matrixU();
  Eigen::VectorXd phases(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    double theta = std::arg(schur.matrixT()(k, k));
    if (theta <= -M_PI) theta += 2 * M_PI;  // principal branch (-pi, pi]
    phases(k) = theta;
  }
  ComplexMatrix h = q * phases.cast<Complex>().asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint().eval());
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

}  // namespace dfs
