#include <doctest.h>

#include "dfs/lindblad.hpp"
#include "dfs/operators.hpp"

using namespace dfs;

namespace {

LindbladModel dephasing_model(int n, double gamma) {
  LindbladModel m;
  m.f_ops = {collective_op(PauliAxis::Z, n)};
  m.a = ComplexMatrix::Constant(1, 1, gamma);
  m.h_s = ComplexMatrix::Zero(1L << n, 1L << n);
  return m;
}

}  // namespace

TEST_CASE("single-qubit collective dephasing: off-diagonal decays as e^{-2 gamma t}") {
  const LindbladModel m = dephasing_model(1, 1.0);
  ComplexMatrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;
  const auto traj = evolve(m, rho0, 1.0, 1e-3);
  const ComplexMatrix& rho = traj.back().rho;
  CHECK(std::abs(rho(0, 1).real() - 0.5 * std::exp(-2.0)) < 1e-6 * 0.5 * std::exp(-2.0));
  CHECK(std::abs(rho(0, 0) - Complex(0.5)) < 1e-9);
}

TEST_CASE("pure Hamiltonian evolution stays unitary") {
  LindbladModel m;
  m.f_ops = {};
  m.a = ComplexMatrix::Zero(0, 0);
  m.h_s = collective_op(PauliAxis::X, 2);
  StateVector psi = StateVector::Zero(4);
  psi(0) = 1.0;
  const ComplexMatrix rho0 = psi * psi.adjoint();
  const auto traj = evolve(m, rho0, 0.5, 1e-3);
  const ComplexMatrix u = mat_exp(Complex(0, -0.5) * m.h_s);
  const ComplexMatrix want = u * rho0 * u.adjoint();
  CHECK(max_abs(traj.back().rho - want) < 1e-9);
}

TEST_CASE("RHS preserves trace and Hermiticity structurally") {
  const int n = 2;
  LindbladModel m;
  m.f_ops = {collective_op(PauliAxis::Z, n), collective_op(PauliAxis::X, n)};
  ComplexMatrix a(2, 2);
  a << 1.0, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.8;
  m.a = a;
  m.h_s = 0.3 * collective_op(PauliAxis::Y, n);
  m.validate();
  ComplexMatrix rho = ComplexMatrix::Random(4, 4);
  rho = (rho * rho.adjoint()).eval();
  rho /= rho.trace();
  const ComplexMatrix d = lindblad_rhs(m, rho);
  CHECK(std::abs(d.trace()) < 1e-12);
  CHECK(is_hermitian(d, 1e-12));
}

TEST_CASE("validate rejects a non-PSD coefficient matrix") {
  LindbladModel m;
  m.f_ops = {pauli_z(), pauli_x()};
  ComplexMatrix a(2, 2);
  a << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  m.a = a;
  m.h_s = ComplexMatrix::Zero(2, 2);
  CHECK_THROWS(m.validate());
}

TEST_CASE("RK4 step-halving improves the error by ~2^4") {
  const LindbladModel m = dephasing_model(1, 1.0);
  ComplexMatrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;
  const double exact = 0.5 * std::exp(-2.0 * 0.5);
  auto err = [&](double dt) {
    const auto traj = evolve(m, rho0, 0.5, dt);
    return std::abs(traj.back().rho(0, 1).real() - exact);
  };
  const double ratio = err(0.05) / err(0.025);
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("singlet is immune to strong collective noise, triplet is not") {
  const int n = 2;
  LindbladModel m;
  for (PauliAxis ax : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
    m.f_ops.push_back(collective_op(ax, n));
  m.a = 0.5 * ComplexMatrix::Identity(3, 3);
  m.h_s = ComplexMatrix::Zero(4, 4);
  StateVector singlet = StateVector::Zero(4);
  singlet(1) = 1 / std::sqrt(2.0);
  singlet(2) = -1 / std::sqrt(2.0);
  StateVector triplet = StateVector::Zero(4);
  triplet(1) = 1 / std::sqrt(2.0);
  triplet(2) = 1 / std::sqrt(2.0);
  const ContrastReport r = contrast_run(m, singlet, triplet, 2.0, 1e-3);
  CHECK(r.pass);
  CHECK(r.protected_fidelity.back() >= 1.0 - 1e-6);
  CHECK(r.unprotected_fidelity.back() < 0.9);
}

TEST_CASE("subsystem fidelity sees through dimensionality-factor scrambling") {
  // strong n=3: prepare a lambda state in the J=1/2 block, rotate the mu
  // factor by a collective unitary; the lambda fidelity must stay 1
  const DfsBlock b = scd_full_basis(3, 1);
  StateVector lam0 = StateVector::Zero(2);
  lam0 << Complex(0.6), Complex(0, 0.8);
  StateVector psi = StateVector::Zero(8);
  for (int l = 0; l < 2; ++l) psi += lam0(l) * b.basis.col(l * 2);  // mu = top for both
  const ComplexMatrix rho = psi * psi.adjoint();
  const ComplexMatrix lam_ref = (lam0 * lam0.adjoint()).eval();
  double pop = 0;
  CHECK(std::abs(subsystem_fidelity(b, rho, lam_ref, &pop) - 1.0) < 1e-10);
  CHECK(pop == doctest::Approx(1.0));
  const ComplexMatrix u = mat_exp(Complex(0, 0.9) * collective_op(PauliAxis::X, 3));
  const ComplexMatrix rho2 = u * rho * u.adjoint();
  CHECK(std::abs(subsystem_fidelity(b, rho2, lam_ref, &pop) - 1.0) < 1e-9);
}
