#include <doctest.h>

#include "dfs/operators.hpp"

using namespace dfs;

TEST_CASE("sigma_on_site places qubit 1 on the most significant bit") {
  // sigma_z on qubit 1 of 2: diag over |00>,|01>,|10>,|11> = (1,1,-1,-1)
  const ComplexMatrix z1 = sigma_on_site(PauliAxis::Z, 1, 2);
  CHECK(z1(0, 0).real() == doctest::Approx(1));
  CHECK(z1(1, 1).real() == doctest::Approx(1));
  CHECK(z1(2, 2).real() == doctest::Approx(-1));
  CHECK(z1(3, 3).real() == doctest::Approx(-1));
  const ComplexMatrix z2 = sigma_on_site(PauliAxis::Z, 2, 2);
  CHECK(z2(1, 1).real() == doctest::Approx(-1));
  CHECK(z2(2, 2).real() == doctest::Approx(1));
}

TEST_CASE("collective S_z eigenvalue is #0 - #1 per bitstring") {
  const int n = 3;
  const ComplexMatrix sz = collective_op(PauliAxis::Z, n);
  for (long b = 0; b < 8; ++b) {
    const int ones = __builtin_popcountl(b);
    CHECK(sz(b, b).real() == doctest::Approx(n - 2 * ones));
  }
}

TEST_CASE("exchange operator swaps the two sites") {
  const ComplexMatrix e = exchange_op(1, 2, 2);
  ComplexMatrix want = ComplexMatrix::Identity(4, 4);
  want(1, 1) = want(2, 2) = 0;
  want(1, 2) = want(2, 1) = 1;
  CHECK(max_abs(e - want) < 1e-15);
  // embedding: E_13 on 3 qubits maps |100> -> |001>
  const ComplexMatrix e13 = exchange_op(1, 3, 3);
  StateVector v = StateVector::Zero(8);
  v(4) = 1.0;  // |100>
  StateVector w = e13 * v;
  CHECK(std::abs(w(1) - 1.0) < 1e-15);  // |001>
}

TEST_CASE("(S^k)^2 family commutes pairwise") {
  for (int n = 2; n <= 5; ++n) {
    const CommuteReport r = check_commuting_family(n);
    CHECK(r.pass);
    CHECK(r.worst <= 1e-10);
  }
}

TEST_CASE("partial sum (S^k)^2 via exchange identity") {
  // (S^k)^2 = k(4-k)/... : check against direct sum of squares for k=n
  const int n = 3;
  ComplexMatrix direct = ComplexMatrix::Zero(8, 8);
  for (PauliAxis ax : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const ComplexMatrix s = collective_op(ax, n);
    direct += s * s;
  }
  CHECK(max_abs(partial_sq_op(n, n) - direct) < 1e-12);
}

TEST_CASE("Heisenberg Hamiltonian preserves the weak-model splitting") {
  const int n = 3;
  std::vector<double> eps = {0.3, -0.7, 1.1};
  std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
  J[0][1] = J[1][0] = 0.4;
  J[1][2] = J[2][1] = -0.2;
  J[0][2] = J[2][0] = 0.9;
  const CommuteReport r = check_heisenberg_preserves_wcd(n, eps, J);
  CHECK(r.pass);
}

TEST_CASE("spec JSON round trip") {
  const OperatorSpec spec = OperatorSpec::t_family(1, 3, 0.5, 0, 1, 0, Complex(0, 2), 4);
  const OperatorSpec back = OperatorSpec::from_json(spec.to_json());
  CHECK(max_abs(build(spec) - build(back)) < 1e-15);
}
