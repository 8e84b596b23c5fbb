#include "dfs/stabilizer.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>

#include "dfs/operators.hpp"

namespace dfs {

DfsConditionReport check_dfs_condition(const DfsBlock& block,
                                       const std::vector<ComplexMatrix>& ops, double tol) {
  const Eigen::Index dim = block.basis.rows();
  const int nj = block.degeneracy();
  const int dj = block.dim_component();
  DfsConditionReport report;
  for (const ComplexMatrix& op : ops) {
    if (op.rows() != dim || op.cols() != dim)
      throw DimensionMismatchError("operator dimension does not match the block's space");
    const ComplexMatrix opb = op * block.basis;
    const ComplexMatrix c = block.basis.adjoint() * opb;
    // off-block residual
    const ComplexMatrix leak = opb - block.basis * c;
    report.worst = std::max(report.worst, max_abs(leak));
    // lambda-averaged action on the mu factor
    ComplexMatrix m = ComplexMatrix::Zero(dj, dj);
    for (int l = 0; l < nj; ++l) m += c.block(l * dj, l * dj, dj, dj);
    m /= static_cast<double>(nj);
    ComplexMatrix ideal = ComplexMatrix::Zero(c.rows(), c.cols());
    for (int l = 0; l < nj; ++l) ideal.block(l * dj, l * dj, dj, dj) = m;
    report.worst = std::max(report.worst, max_abs(ComplexMatrix(c - ideal)));
    report.m_ops.push_back(std::move(m));
  }
  report.pass = report.worst <= tol;
  return report;
}

bool lindblad_dfs_condition(const DfsBlock& block, const std::vector<ComplexMatrix>& f_ops,
                            double tol) {
  return check_dfs_condition(block, f_ops, tol).pass;
}

StabilizerElement stabilizer_element(const DfsBlock& block, const std::vector<Complex>& v) {
  std::vector<ComplexMatrix> couplings;
  if (block.model == Model::Weak) {
    couplings.push_back(collective_op(PauliAxis::Z, block.n));
  } else {
    couplings.push_back(collective_op(PauliAxis::X, block.n));
    couplings.push_back(collective_op(PauliAxis::Y, block.n));
    couplings.push_back(collective_op(PauliAxis::Z, block.n));
  }
  if (v.size() != couplings.size())
    throw std::invalid_argument("v length must match the model's coupling-operator count");
  const DfsConditionReport cond = check_dfs_condition(block, couplings);
  if (!cond.pass) throw std::invalid_argument("block fails the DFS condition");

  const Eigen::Index dim = block.basis.rows();
  const int nj = block.degeneracy();
  const int dj = block.dim_component();
  StabilizerElement el;
  el.v = v;
  el.generator = ComplexMatrix::Zero(dim, dim);
  for (size_t a = 0; a < couplings.size(); ++a) {
    ComplexMatrix im = ComplexMatrix::Zero(static_cast<Eigen::Index>(nj) * dj,
                                           static_cast<Eigen::Index>(nj) * dj);
    for (int l = 0; l < nj; ++l) im.block(l * dj, l * dj, dj, dj) = cond.m_ops[a];
    const ComplexMatrix lambda = block.basis * im * block.basis.adjoint();
    el.generator += v[a] * (couplings[a] - lambda);
  }
  el.realized = mat_exp(el.generator);
  return el;
}

bool wcd_finite_stabilizer_check(int n, int lambdaJ, const StateVector& state, double tol) {
  const long dim = check_qubits(n);
  if (state.size() != dim) throw DimensionMismatchError("state dimension must be 2^n");
  const double step = 2.0 * std::numbers::pi / n;
  StateVector mapped(dim);
  for (long m = 0; m < dim; ++m) {
    const int ones = std::popcount(static_cast<unsigned long>(m));
    const double phase = step * (n - 2 * ones) - step * lambdaJ;  // (#0 - #1 - lambda) 2pi/n
    mapped(m) = std::polar(1.0, phase) * state(m);
  }
  return max_abs(ComplexMatrix(mapped - state)) <= tol;
}

bool detects(const std::vector<ComplexMatrix>& stabilizer_generators, const ComplexMatrix& error,
             double tol) {
  for (const ComplexMatrix& s : stabilizer_generators) {
    if (s.rows() != error.rows() || s.cols() != error.cols())
      throw DimensionMismatchError("stabilizer and error dimensions differ");
    const ComplexMatrix se = s * error;
    if (max_abs(ComplexMatrix(se + error * s)) <= tol && max_abs(se) > tol) return true;
  }
  return false;
}

KlReport kl_check(const DfsBlock& block, const std::vector<ComplexMatrix>& errors, double tol) {
  // Detection form: the identity is implicitly part of the error set, and
  // each listed error is checked against itself and against the identity
  // (<j|E|i> = c delta_ij and <j|E†E|i> = c' delta_ij). Cross pairs of two
  // distinct nontrivial errors belong to the caller: pass their product as
  // an explicit error to probe correctability beyond distance 2.
  const Eigen::Index k = block.basis.cols();
  const int ne = static_cast<int>(errors.size());
  std::vector<ComplexMatrix> ext;
  ext.push_back(ComplexMatrix::Identity(block.basis.rows(), block.basis.rows()));
  ext.insert(ext.end(), errors.begin(), errors.end());
  KlReport report;
  report.c = ComplexMatrix::Zero(ne + 1, ne + 1);
  for (int a = 0; a <= ne; ++a)
    for (int b = 0; b <= ne; ++b) {
      if (a != b && a != 0 && b != 0) continue;
      const ComplexMatrix g = block.basis.adjoint() * ext[b].adjoint() * ext[a] * block.basis;
      const Complex c = g.trace() / static_cast<double>(k);
      report.c(a, b) = c;
      const ComplexMatrix dev = g - c * ComplexMatrix::Identity(k, k);
      report.worst = std::max(report.worst, max_abs(dev));
    }
  report.pass = report.worst <= tol;
  return report;
}

}  // namespace dfs
