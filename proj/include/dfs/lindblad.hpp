#ifndef DFS_LINDBLAD_HPP
#define DFS_LINDBLAD_HPP

#include <vector>

#include "dfs/basis.hpp"
#include "dfs/matrix.hpp"

namespace dfs {

struct LindbladModel {
  std::vector<ComplexMatrix> f_ops;  // coupling operators, not necessarily Hermitian
  ComplexMatrix a;                   // positive semidefinite Hermitian coefficients
  ComplexMatrix h_s;                 // system Hamiltonian, may be zero

  void validate() const;  // throws on shape or positivity violations
};

/// -i[H_S, rho] + (1/2) sum a_{ab} ([F_a rho, F_b†] + [F_a, rho F_b†])
ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho);

struct TrajectoryPoint {
  double t;
  ComplexMatrix rho;
};

/// Fixed-step RK4 integration; validates trace, Hermiticity and the
/// eigenvalue floor along the way.
std::vector<TrajectoryPoint> evolve(const LindbladModel& model, const ComplexMatrix& rho0,
                                    double T, double dt);

/// Project rho onto the block, trace out the dimensionality factor and
/// return the (Uhlmann, squared) fidelity of the remaining lambda state
/// against the reference. Population of the block is reported through
/// `population` when non-null.
double subsystem_fidelity(const DfsBlock& block, const ComplexMatrix& rho,
                          const ComplexMatrix& rho_lambda_ref, double* population = nullptr);

double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

struct ContrastReport {
  std::vector<double> t;
  std::vector<double> protected_fidelity;    // overlap with the initial protected state
  std::vector<double> unprotected_fidelity;  // overlap with the initial unprotected state
  bool pass = false;
};

/// Side-by-side decay comparison of two pure initial states.
ContrastReport contrast_run(const LindbladModel& model, const StateVector& protected_state,
                            const StateVector& unprotected_state, double T, double dt);

}  // namespace dfs

#endif
