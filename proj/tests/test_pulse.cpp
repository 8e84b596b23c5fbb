#include <doctest.h>

#include <random>

#include "dfs/operators.hpp"
#include "dfs/pulse.hpp"

using namespace dfs;

namespace {

std::vector<Primitive> strong_primitives(int n, const std::vector<DfsBlock>& blocks,
                                         int block_index,
                                         std::vector<BlockRestrictedOperator>* gens_out) {
  std::vector<Primitive> prims;
  for (int i = 1; i < n; ++i) {
    const ComplexMatrix full = exchange_op(i, i + 1, n);
    const BlockRestrictedOperator r = restrict_op(full, blocks);
    prims.push_back({"E" + std::to_string(i), full, r.mats[block_index]});
    if (gens_out) gens_out->push_back(r);
  }
  return prims;
}

ComplexMatrix random_su2(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  ComplexMatrix u(2, 2);
  u << Complex(q(0), q(3)), Complex(q(2), q(1)), Complex(-q(2), q(1)), Complex(q(0), -q(3));
  return u;
}

}  // namespace

TEST_CASE("replay multiplies step unitaries in application order") {
  const auto blocks = standard_blocks(Model::Strong, 3);
  const auto prims = strong_primitives(3, blocks, 0, nullptr);
  PulseSequence seq;
  seq.steps = {{0, 0.4}, {1, -0.9}};
  const ComplexMatrix direct =
      mat_exp(Complex(0, -0.9) * prims[1].block) * mat_exp(Complex(0, 0.4) * prims[0].block);
  CHECK(max_abs(replay(prims, seq) - direct) < 1e-12);
}

TEST_CASE("trotter error slope is n^-1") {
  const auto blocks = standard_blocks(Model::Strong, 3);
  const auto prims = strong_primitives(3, blocks, 0, nullptr);
  const std::vector<std::pair<int, double>> coeffs = {{0, 0.8}, {1, -0.5}};
  const ComplexMatrix target =
      mat_exp(Complex(0, 1) * (0.8 * prims[0].block - 0.5 * prims[1].block));
  std::vector<double> errs;
  std::vector<int> ns = {8, 16, 32, 64, 128};
  for (int n : ns)
    errs.push_back(trace_distance(replay(prims, trotter_compose(prims, coeffs, n)), target));
  // least-squares slope of log(err) vs log(n)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < ns.size(); ++k) {
    const double x = std::log(ns[k]), y = std::log(errs[k]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double m = ns.size();
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("group-commutator error slope is n^-1/2") {
  const auto blocks = standard_blocks(Model::Strong, 3);
  const auto prims = strong_primitives(3, blocks, 0, nullptr);  // J = 1/2 block
  const double t = 0.3;
  const ComplexMatrix target =
      mat_exp(ComplexMatrix(-t * commutator(prims[0].block, prims[1].block)));
  std::vector<double> errs;
  std::vector<int> ns = {16, 64, 256, 1024};
  for (int n : ns)
    errs.push_back(
        trace_distance(replay(prims, commutator_compose(prims, 0, 1, -t, n)), target));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < ns.size(); ++k) {
    const double x = std::log(ns[k]), y = std::log(errs[k]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double m = ns.size();
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.3));
}

TEST_CASE("compile hits the error budget on the strong n=3 qubit block") {
  const auto blocks = standard_blocks(Model::Strong, 3);
  std::vector<BlockRestrictedOperator> gens;
  const auto prims = strong_primitives(3, blocks, 0, &gens);
  const LieBasis closure = lie_closure(gens);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    const ComplexMatrix target = random_su2(rng);
    const PulseSequence seq = compile(target, prims, closure, 0);
    CHECK(seq.converged);
    CHECK(seq.achieved_error <= 1e-3);
    CHECK(trace_distance(replay(prims, seq), target) == doctest::Approx(seq.achieved_error));
    CHECK(prefix_leakage(prims, seq, blocks[0]) <= 1e-8);
  }
}

TEST_CASE("faulty gate distance matches the analytic form") {
  const ComplexMatrix h = pauli_x();
  for (double dphi : {0.0, 0.1, 1.0, M_PI})
    CHECK(faulty_gate_distance(h, 0.7, dphi) ==
          doctest::Approx(std::sqrt(2.0) * std::abs(std::sin(dphi / 2))).epsilon(1e-10));
  CHECK_THROWS(faulty_gate_distance(pauli_z() + identity2(), 0.0, 0.1));  // not traceless
}
