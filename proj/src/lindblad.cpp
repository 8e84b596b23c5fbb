#include "dfs/lindblad.hpp"

#include <stdexcept>

namespace dfs {

void LindbladModel::validate() const {
  if (f_ops.empty()) {  // purely Hamiltonian evolution
    if (a.size() != 0) throw DimensionMismatchError("coefficient matrix without couplings");
    if (h_s.size() == 0) throw std::invalid_argument("empty model");
    if (h_s.rows() != h_s.cols()) throw DimensionMismatchError("H_S shape");
    return;
  }
  const Eigen::Index d = f_ops.front().rows();
  for (const auto& f : f_ops)
    if (f.rows() != d || f.cols() != d) throw DimensionMismatchError("coupling operator shape");
  if (h_s.size() != 0 && (h_s.rows() != d || h_s.cols() != d))
    throw DimensionMismatchError("H_S shape");
  const Eigen::Index m = static_cast<Eigen::Index>(f_ops.size());
  if (a.rows() != m || a.cols() != m) throw DimensionMismatchError("coefficient matrix shape");
  if (!is_hermitian(a, 1e-10)) throw std::invalid_argument("coefficient matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("coefficient matrix must be positive semidefinite");
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho) {
  const Eigen::Index d = model.f_ops.empty() ? model.h_s.rows() : model.f_ops.front().rows();
  if (rho.rows() != d || rho.cols() != d) throw DimensionMismatchError("rho shape");
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  if (model.h_s.size() != 0) out -= Complex(0, 1) * commutator(model.h_s, rho);
  for (size_t al = 0; al < model.f_ops.size(); ++al)
    for (size_t be = 0; be < model.f_ops.size(); ++be) {
      const Complex c = model.a(static_cast<Eigen::Index>(al), static_cast<Eigen::Index>(be));
      if (c == Complex(0, 0)) continue;
      const ComplexMatrix& fa = model.f_ops[al];
      const ComplexMatrix fbd = model.f_ops[be].adjoint();
      out += 0.5 * c *
             (commutator(ComplexMatrix(fa * rho), fbd) + commutator(fa, ComplexMatrix(rho * fbd)));
    }
  return out;
}

std::vector<TrajectoryPoint> evolve(const LindbladModel& model, const ComplexMatrix& rho0,
                                    double T, double dt) {
  model.validate();
  if (dt <= 0.0 || T < dt) throw std::invalid_argument("need dt > 0 and T >= dt");
  std::vector<TrajectoryPoint> out;
  ComplexMatrix rho = rho0;
  const long nsteps = static_cast<long>(std::llround(T / dt));
  out.push_back({0.0, rho});
  for (long k = 1; k <= nsteps; ++k) {
    const ComplexMatrix k1 = lindblad_rhs(model, rho);
    const ComplexMatrix k2 = lindblad_rhs(model, ComplexMatrix(rho + 0.5 * dt * k1));
    const ComplexMatrix k3 = lindblad_rhs(model, ComplexMatrix(rho + 0.5 * dt * k2));
    const ComplexMatrix k4 = lindblad_rhs(model, ComplexMatrix(rho + dt * k3));
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!is_hermitian(rho, 1e-10)) throw std::runtime_error("density matrix lost Hermiticity");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10)
      throw std::runtime_error("trace drift exceeds budget (dt too large?)");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-6)
      throw std::runtime_error("density matrix left the PSD cone (dt too large?)");
    out.push_back({k * dt, rho});
  }
  return out;
}

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  // when either state is pure the fidelity is exactly tr(rho sigma); the
  // general Uhlmann formula below loses ~sqrt(machine eps) to the matrix
  // square roots near purity, so take the exact path when available
  auto is_pure = [](const ComplexMatrix& m) {
    return max_abs(ComplexMatrix(m * m - m)) <= 1e-12;
  };
  if (is_pure(rho) || is_pure(sigma)) return (rho * sigma).trace().real();
  const ComplexMatrix sr = psd_sqrt(rho);
  const ComplexMatrix inner = psd_sqrt(ComplexMatrix(sr * sigma * sr));
  const double f = inner.trace().real();
  return f * f;
}

double subsystem_fidelity(const DfsBlock& block, const ComplexMatrix& rho,
                          const ComplexMatrix& rho_lambda_ref, double* population) {
  const int nj = block.degeneracy();
  const int dj = block.dim_component();
  const ComplexMatrix p = block.basis.adjoint() * rho * block.basis;
  const double pop = p.trace().real();
  if (population) *population = pop;
  ComplexMatrix lam = ComplexMatrix::Zero(nj, nj);
  for (int l = 0; l < nj; ++l)
    for (int lp = 0; lp < nj; ++lp) {
      Complex acc = 0.0;
      for (int mu = 0; mu < dj; ++mu) acc += p(l * dj + mu, lp * dj + mu);
      lam(l, lp) = acc;
    }
  if (pop <= 1e-12) return 0.0;
  lam /= lam.trace();
  return state_fidelity(lam, rho_lambda_ref);
}

ContrastReport contrast_run(const LindbladModel& model, const StateVector& protected_state,
                            const StateVector& unprotected_state, double T, double dt) {
  if (std::abs(protected_state.norm() - 1.0) > 1e-10 ||
      std::abs(unprotected_state.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("states must be normalized");
  const ComplexMatrix rho_p = protected_state * protected_state.adjoint();
  const ComplexMatrix rho_u = unprotected_state * unprotected_state.adjoint();
  const auto traj_p = evolve(model, rho_p, T, dt);
  const auto traj_u = evolve(model, rho_u, T, dt);
  ContrastReport rep;
  for (size_t k = 0; k < traj_p.size(); ++k) {
    rep.t.push_back(traj_p[k].t);
    rep.protected_fidelity.push_back(
        (protected_state.adjoint() * traj_p[k].rho * protected_state)(0, 0).real());
    rep.unprotected_fidelity.push_back(
        (unprotected_state.adjoint() * traj_u[k].rho * unprotected_state)(0, 0).real());
  }
  rep.pass = rep.protected_fidelity.back() >= 1.0 - 1e-6 && rep.unprotected_fidelity.back() <= 0.9;
  return rep;
}

}  // namespace dfs
