#include <doctest.h>

#include <cstdlib>

#include "dfs/matrix.hpp"

using namespace dfs;

TEST_CASE("kron matches hand-computed 2x2 example") {
  const ComplexMatrix k = kron(pauli_z(), pauli_x());
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 1) = want(1, 0) = 1.0;
  want(2, 3) = want(3, 2) = -1.0;
  CHECK(max_abs(k - want) == doctest::Approx(0.0));
}

TEST_CASE("pauli algebra") {
  const Complex i(0, 1);
  CHECK(max_abs(commutator(pauli_x(), pauli_y()) - 2.0 * i * pauli_z()) < 1e-15);
  CHECK(max_abs(pauli_x() * pauli_x() - identity2()) < 1e-15);
  CHECK(max_abs(pauli_y() * pauli_y() - identity2()) < 1e-15);
}

TEST_CASE("mat_exp of i*theta*sigma_z is the known rotation") {
  const double th = 0.7;
  const ComplexMatrix u = mat_exp(Complex(0, th) * pauli_z());
  CHECK(std::abs(u(0, 0) - std::polar(1.0, th)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, -th)) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-14);
  CHECK(is_unitary(u));
}

TEST_CASE("mat_exp non-normal case: nilpotent gives I + N") {
  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(0, 1) = 3.0;
  const ComplexMatrix e = mat_exp(n);
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-13);
  CHECK(std::abs(e(0, 1) - 3.0) < 1e-13);
  CHECK(std::abs(e(1, 0)) < 1e-13);
}

TEST_CASE("trace_distance bounds and exactness") {
  const ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  CHECK(trace_distance(u, u) == doctest::Approx(0.0));
  // d(I, e^{i phi sigma_z}) = sqrt(1 - cos(phi))
  const double phi = 0.3;
  const ComplexMatrix v = mat_exp(Complex(0, phi) * pauli_z());
  CHECK(trace_distance(u, v) == doctest::Approx(std::sqrt(1 - std::cos(phi))));
}

TEST_CASE("matrix_log_unitary round trip and principal branch") {
  const ComplexMatrix h0 = 0.4 * pauli_x() + 1.1 * pauli_z();
  const ComplexMatrix u = mat_exp(Complex(0, 1) * h0);
  const ComplexMatrix h = matrix_log_unitary(u);
  CHECK(is_hermitian(h, 1e-10));
  CHECK(trace_distance(mat_exp(Complex(0, 1) * h), u) < 1e-12);
  // eigenphases on (-pi, pi]
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  for (int k = 0; k < 2; ++k) {
    CHECK(es.eigenvalues()(k) <= M_PI + 1e-12);
    CHECK(es.eigenvalues()(k) > -M_PI - 1e-12);
  }
  CHECK_THROWS(matrix_log_unitary(2.0 * u));
}

TEST_CASE("dimension cap guards kron growth") {
  const long cap = dimension_cap();
  CHECK(cap == 4096);  // default, no env override in the test run
  ComplexMatrix big = ComplexMatrix::Identity(cap, 1);
  CHECK_THROWS_AS(kron(big, ComplexMatrix::Identity(2, 1)), ResourceLimitError);
  CHECK_THROWS_AS(check_qubits(13), ResourceLimitError);
  CHECK(check_qubits(12) == 4096);
  set_dimension_cap(1L << 13);
  CHECK(check_qubits(13) == 8192);
  set_dimension_cap(cap);
}

TEST_CASE("hs_inner conjugate-linearity in first slot") {
  ComplexMatrix a = pauli_x() + Complex(0, 1) * pauli_y();
  ComplexMatrix b = pauli_z();
  CHECK(std::abs(hs_inner(Complex(0, 2) * a, b) -
                 std::conj(Complex(0, 2)) * hs_inner(a, b)) < 1e-14);
}
