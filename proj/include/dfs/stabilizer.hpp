#ifndef DFS_STABILIZER_HPP
#define DFS_STABILIZER_HPP

#include <vector>

#include "dfs/basis.hpp"
#include "dfs/matrix.hpp"

namespace dfs {

/// Result of the I ⊗ M structural check on a block.
struct DfsConditionReport {
  std::vector<ComplexMatrix> m_ops;  // d_J x d_J action on the dimensionality factor
  double worst = 0.0;                // max deviation from I ⊗ M, including off-block leakage
  bool pass = false;
};

/// Verifies that each operator acts on the block as I_{n_J} ⊗ M (trivially
/// on the degeneracy factor) and leaves the block invariant.
DfsConditionReport check_dfs_condition(const DfsBlock& block,
                                       const std::vector<ComplexMatrix>& ops,
                                       double tol = 1e-9);

/// Same structural check for Lindblad coupling operators (no Hermiticity
/// assumed anywhere).
bool lindblad_dfs_condition(const DfsBlock& block, const std::vector<ComplexMatrix>& f_ops,
                            double tol = 1e-9);

struct StabilizerElement {
  std::vector<Complex> v;
  ComplexMatrix generator;  // sum v_a (S_a - Lambda_a)
  ComplexMatrix realized;   // exp(generator)
};

/// Continuous stabilizer element D(v). The block's coupling operators are
/// S_z (weak) or S_x, S_y, S_z (strong); Lambda_a = B (I ⊗ M_a) B† is the
/// zero-off-block extension, so the exponent annihilates the block.
StabilizerElement stabilizer_element(const DfsBlock& block, const std::vector<Complex>& v);

/// Finite weak-model check: e^{-2 pi i lambda/n} Z_{1/n}^{⊗n} fixes the
/// state iff it lies in the lambda_J eigenspace (for eigenstates).
bool wcd_finite_stabilizer_check(int n, int lambdaJ, const StateVector& state,
                                 double tol = 1e-9);

/// True iff some listed stabilizer element anticommutes (nontrivially)
/// with the error.
bool detects(const std::vector<ComplexMatrix>& stabilizer_generators, const ComplexMatrix& error,
             double tol = 1e-10);

struct KlReport {
  ComplexMatrix c;     // c_{alpha beta}
  double worst = 0.0;  // max deviation from c_{ab} delta_{ij}
  bool pass = false;
};

/// Knill-Laflamme condition <Psi_j|E_b† E_a|Psi_i> = c_{ab} delta_{ij}
/// over the block's columns.
KlReport kl_check(const DfsBlock& block, const std::vector<ComplexMatrix>& errors,
                  double tol = 1e-10);

}  // namespace dfs

#endif
