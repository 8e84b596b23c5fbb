#ifndef DFS_UNIVERSALITY_HPP
#define DFS_UNIVERSALITY_HPP

#include <string>
#include <vector>

#include "dfs/basis.hpp"
#include "dfs/matrix.hpp"

namespace dfs {

/// A full-space operator reduced to its action on a list of DFS blocks.
/// Strong blocks are kept on the commutant side: the I_{d_J} tensor factor
/// is verified and stripped, leaving an n_J x n_J matrix per block.
struct BlockRestrictedOperator {
  Model model = Model::Strong;
  int n = 0;
  std::vector<int> twoJs;
  std::vector<ComplexMatrix> mats;
  double leakage = 0.0;

  BlockRestrictedOperator scaled(double s) const;
  BlockRestrictedOperator plus(const BlockRestrictedOperator& o) const;
  BlockRestrictedOperator comm(const BlockRestrictedOperator& o) const;
  double inner(const BlockRestrictedOperator& o) const;  // Re sum_b Tr(a_b† b_b)
  double norm() const;
  double max_entry() const;
  void project_traceless();  // remove the per-block identity component
};

/// Canonical block list for a model: all admissible twoJ ascending.
std::vector<DfsBlock> standard_blocks(Model model, int n);

BlockRestrictedOperator restrict_op(const ComplexMatrix& op, const std::vector<DfsBlock>& blocks,
                                    double tol = 1e-9);

/// How a Lie-basis element arose: a seeded generator or a commutator of two
/// earlier basis elements. Kept so pulse schedules can replay derivations.
struct Derivation {
  bool is_seed = true;
  int seed = -1;
  int lhs = -1;
  int rhs = -1;
};

struct LieBasis {
  std::vector<BlockRestrictedOperator> elements;  // HS-orthonormal, anti-Hermitian, traceless
  std::vector<Derivation> sources;
  // Upper-triangular mix: admitted candidate k = sum_{j<=k} mix(j,k) * elements[j].
  Eigen::MatrixXd mix;
  int dim() const { return static_cast<int>(elements.size()); }
  std::vector<int> per_block_dims(double tol = 1e-8) const;
};

/// Closes the real Lie algebra generated by i*(generators) under
/// commutators. Deterministic breadth-first admission.
LieBasis lie_closure(const std::vector<BlockRestrictedOperator>& generators, double tol = 1e-8);

struct IndependenceReport {
  struct Entry {
    int twoJ;
    int block_dim;   // d_K (weak) or n_J (strong)
    int closure_dim;  // rank of the closure restricted to this block
    double worst_residual;
    bool pass;
  };
  std::vector<Entry> entries;
  bool pass = true;
};

/// Certifies that every su(d) element supported on a single block (zero on
/// all others) lies in the span of the closure.
IndependenceReport independence_certificate(const LieBasis& basis,
                                            const std::vector<DfsBlock>& blocks,
                                            double tol = 1e-8);

struct IdentityReport {
  struct Entry {
    std::string name;
    double deviation;
  };
  std::vector<Entry> entries;
  double worst = 0.0;
  bool pass = false;
};

/// Verifies the explicit commutator identities behind the constructive
/// universality proofs (weak n=2 encoded Pauli chain; strong n=3 exchange
/// combinations; strong n=4 encoded su(2) and su(3) generators).
IdentityReport constructive_identities(Model model, int n, double tol = 1e-10);

/// Verifies the boundary-exchange normal form: E_{n,n-1} restricted to
/// (n, J) is identity on TT/BB paths and rotates each BT/TB pair by
/// theta_J with tan(theta_J) = 2 sqrt(J(J+1)).
IdentityReport exchange_boundary_check(int n, int twoJ, double tol = 1e-9);

ComplexMatrix conjugate_hamiltonian(const ComplexMatrix& u, const ComplexMatrix& h);

/// Least-squares residual of x against the span of the (orthonormal) basis.
double span_residual(const LieBasis& basis, const BlockRestrictedOperator& x);

}  // namespace dfs

#endif
