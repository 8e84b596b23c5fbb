#ifndef DFS_PULSE_HPP
#define DFS_PULSE_HPP

#include <string>
#include <vector>

#include "dfs/matrix.hpp"
#include "dfs/universality.hpp"

namespace dfs {

/// A switchable Hamiltonian. `full` acts on the 2^n space (used for
/// leakage audits); `block` is its restriction to the target block.
struct Primitive {
  std::string name;
  ComplexMatrix full;
  ComplexMatrix block;
};

struct PulseStep {
  int primitive;    // index into the primitive table
  double duration;  // dimensionless time, pulse unitary = exp(i * duration * H)
};

struct PulseSequence {
  std::vector<PulseStep> steps;
  ComplexMatrix target;        // on the block
  double achieved_error = 0.0;  // trace_distance(replayed product, target)
  bool converged = true;
  size_t length() const { return steps.size(); }
};

/// Product of the step unitaries on the block, steps applied in order
/// (steps[0] first, so the product is U_last ... U_0).
ComplexMatrix replay(const std::vector<Primitive>& prims, const PulseSequence& seq);

/// Max off-block residual of every prefix product, on the full space.
double prefix_leakage(const std::vector<Primitive>& prims, const PulseSequence& seq,
                      const DfsBlock& block);

/// First-order product-formula schedule for exp(i sum_k t_k H_k).
PulseSequence trotter_compose(const std::vector<Primitive>& prims,
                              const std::vector<std::pair<int, double>>& coeffs, int n_steps);

/// Group-commutator schedule approximating exp(t [H_i, H_j]) by n_steps
/// 4-pulse cycles of duration sqrt(|t|/n_steps).
PulseSequence commutator_compose(const std::vector<Primitive>& prims, int i, int j, double t,
                                 int n_steps);

/// Exact ZXZ Euler decomposition of a 2x2 special unitary using generators
/// verified to act as +-sigma_x and +-sigma_z on the block.
PulseSequence euler_su2(const std::vector<Primitive>& prims, const ComplexMatrix& target,
                        int xgen, int zgen);

struct CompileOptions {
  double epsilon = 1e-3;
  size_t step_cap = size_t(1) << 20;
};

/// Compiles a block unitary into primitive pulses: principal log, expansion
/// in the closure basis, recursive realization of each basis element's
/// derivation, outer product formula with step doubling until the error
/// target is met. Primitives must line up with the closure's seed order.
PulseSequence compile(const ComplexMatrix& target, const std::vector<Primitive>& prims,
                      const LieBasis& closure, int block_index, const CompileOptions& opt = {});

/// Distance between e^{i phi H} and e^{i (phi+dphi) H} for traceless
/// involutive H; analytically sqrt(2)|sin(dphi/2)|.
double faulty_gate_distance(const ComplexMatrix& h, double phi, double dphi);

}  // namespace dfs

#endif
