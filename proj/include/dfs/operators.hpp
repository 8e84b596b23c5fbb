#ifndef DFS_OPERATORS_HPP
#define DFS_OPERATORS_HPP

#include <string>
#include <variant>
#include <vector>

#include "dfs/matrix.hpp"

namespace dfs {

enum class PauliAxis { X, Y, Z };

PauliAxis axis_from_string(const std::string& s);
std::string axis_to_string(PauliAxis axis);

/// Specification of a full-space system operator on n qubits.
/// Qubit indices are 1-based; qubit 1 sits on the most significant bit
/// of the computational-basis index.
struct OperatorSpec {
  struct Sigma {
    PauliAxis axis;
    int site;
  };
  struct Collective {
    PauliAxis axis;
  };
  struct PartialSq {  // (S^k)^2 = sum_a (S_a^k)^2
    int k;
  };
  struct Exchange {
    int i, j;
  };
  struct TFamily {  // the 4x4 commutant family on qubits (i, j)
    int i, j;
    double z1, z2, z3, z4;
    Complex h;
  };
  struct Heisenberg {
    std::vector<double> epsilon;              // size n
    std::vector<std::vector<double>> coupling;  // symmetric n x n
  };

  using Kind =
      std::variant<Sigma, Collective, PartialSq, Exchange, TFamily, Heisenberg>;

  Kind kind;
  int n = 0;

  static OperatorSpec sigma(PauliAxis axis, int site, int n);
  static OperatorSpec collective(PauliAxis axis, int n);
  static OperatorSpec partial_sq(int k, int n);
  static OperatorSpec exchange(int i, int j, int n);
  static OperatorSpec t_family(int i, int j, double z1, double z2, double z3,
                               double z4, Complex h, int n);
  static OperatorSpec heisenberg(std::vector<double> epsilon,
                                 std::vector<std::vector<double>> coupling);

  std::string to_json() const;
  static OperatorSpec from_json(const std::string& text);
};

/// Assemble the full 2^n x 2^n matrix for a spec.
ComplexMatrix build(const OperatorSpec& spec);

// Convenience builders used throughout the test and verification code.
ComplexMatrix sigma_on_site(PauliAxis axis, int site, int n);
ComplexMatrix collective_op(PauliAxis axis, int n);
ComplexMatrix partial_sq_op(int k, int n);  // (S^k)^2, unscaled Paulis
ComplexMatrix exchange_op(int i, int j, int n);

struct CommuteReport {
  double worst = 0.0;
  bool pass = false;
};

/// max over k,l <= n of ||[(S^k)^2, (S^l)^2]||_max, pass iff <= 1e-10.
CommuteReport check_commuting_family(int n);

/// ||[H_Heis, S_z]||_max, pass iff <= 1e-10.
CommuteReport check_heisenberg_preserves_wcd(
    int n, const std::vector<double>& epsilon,
    const std::vector<std::vector<double>>& coupling);

}  // namespace dfs

#endif
