#ifndef DFS_BASIS_HPP
#define DFS_BASIS_HPP

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dfs/matrix.hpp"

namespace dfs {

using BigInt = boost::multiprecision::cpp_int;

enum class Model { Weak, Strong };

/// An (n, J) decoherence-free block.
///
/// Paths are step sequences of +-1. For the strong model a step is +-1/2
/// unit of total angular momentum; for the weak model +1 appends |0> and
/// -1 appends |1>. Basis columns are ordered path-major (lambda), with the
/// dimensionality index mu = m_J descending within a path (strong model).
struct DfsBlock {
  Model model = Model::Strong;
  int n = 0;
  int twoJ = 0;  // strong: 2J; weak: 2J with lambda_J = n - 2J (J = #ones)
  std::vector<std::vector<int>> paths;
  ComplexMatrix basis;  // 2^n x (degeneracy * dim_component)

  int degeneracy() const { return static_cast<int>(paths.size()); }
  int dim_component() const { return model == Model::Strong ? twoJ + 1 : 1; }
  int lambda() const { return n - twoJ; }  // weak eigenvalue #0 - #1

  std::string to_json() const;
};

BigInt binomial(int n, int k);

/// Exact degeneracy (2J+1) n! / ((n/2+J+1)! (n/2-J)!) of the strong (n, J)
/// block. Throws on parity violation or out-of-range J.
BigInt scd_degeneracy(int n, int twoJ);

/// Path-enumeration oracle: counts non-negative half-step walks from
/// J_1 = 1/2 to (n, J) by dynamic programming. Independent of the formula.
BigInt scd_path_count(int n, int twoJ);

/// All strong-model paths ending at (n, J), ascending in the running-J
/// sequence (equivalently: down-step before up-step, position by position).
std::vector<std::vector<int>> scd_paths(int n, int twoJ);

/// Weak block for eigenvalue lambda_J = #0 - #1. Columns are the
/// computational bitstrings in ascending index order.
DfsBlock wcd_basis(int n, int lambdaJ);

/// Maximal-m_J state for one strong-model path, built by the up/down
/// recursion (up appends spin-up |1>, down couples with the fixed
/// negative-alpha phase convention).
StateVector scd_maximal_state(const std::vector<int>& path);

/// Full (n, J) strong block: every path's maximal state plus lowered
/// m_J companions.
DfsBlock scd_full_basis(int n, int twoJ);

/// Tensor product of n/2 singlets (|01> - |10>)/sqrt(2).
StateVector singlet_product_state(int n);

enum class TwoDeepKind { TT, BT, TB, BB };

/// Maximal-m_J state whose last two steps are the given kind, evaluated
/// from the closed two-deep coefficient formulas (not the one-step
/// recursion). The n-2 qubit prefix is the first path reaching the
/// required child J. Throws if the state does not exist for (n, J).
StateVector two_deep_state(int n, int twoJ, TwoDeepKind kind);

/// The canonical prefix path used by two_deep_state.
std::vector<int> two_deep_prefix(int n, int twoJ, TwoDeepKind kind);

/// Collective lowering operator sum_i |0><1|_i on n qubits.
ComplexMatrix lowering_op(int n);

}  // namespace dfs

#endif
