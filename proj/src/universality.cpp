#include "dfs/universality.hpp"

#include <map>
#include <stdexcept>

#include "dfs/operators.hpp"

namespace dfs {

namespace {

Eigen::VectorXd flatten(const BlockRestrictedOperator& x) {
  Eigen::Index total = 0;
  for (const auto& m : x.mats) total += 2 * m.size();
  Eigen::VectorXd v(total);
  Eigen::Index at = 0;
  for (const auto& m : x.mats) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        v(at++) = m(r, c).real();
        v(at++) = m(r, c).imag();
      }
  }
  return v;
}

void check_layout(const BlockRestrictedOperator& a, const BlockRestrictedOperator& b) {
  if (a.twoJs != b.twoJs || a.model != b.model || a.n != b.n)
    throw DimensionMismatchError("block layouts differ");
}

}  // namespace

BlockRestrictedOperator BlockRestrictedOperator::scaled(double s) const {
  BlockRestrictedOperator out = *this;
  for (auto& m : out.mats) m *= s;
  return out;
}

BlockRestrictedOperator BlockRestrictedOperator::plus(const BlockRestrictedOperator& o) const {
  check_layout(*this, o);
  BlockRestrictedOperator out = *this;
  for (size_t b = 0; b < mats.size(); ++b) out.mats[b] += o.mats[b];
  return out;
}

BlockRestrictedOperator BlockRestrictedOperator::comm(const BlockRestrictedOperator& o) const {
  check_layout(*this, o);
  BlockRestrictedOperator out = *this;
  for (size_t b = 0; b < mats.size(); ++b) out.mats[b] = commutator(mats[b], o.mats[b]);
  out.leakage = 0.0;
  return out;
}

double BlockRestrictedOperator::inner(const BlockRestrictedOperator& o) const {
  check_layout(*this, o);
  double s = 0.0;
  for (size_t b = 0; b < mats.size(); ++b) s += hs_inner(mats[b], o.mats[b]).real();
  return s;
}

double BlockRestrictedOperator::norm() const { return std::sqrt(std::max(0.0, inner(*this))); }

double BlockRestrictedOperator::max_entry() const {
  double s = 0.0;
  for (const auto& m : mats) s = std::max(s, max_abs(m));
  return s;
}

void BlockRestrictedOperator::project_traceless() {
  for (auto& m : mats) {
    const Complex t = m.trace() / static_cast<double>(m.rows());
    m -= t * ComplexMatrix::Identity(m.rows(), m.cols());
  }
}

std::vector<DfsBlock> standard_blocks(Model model, int n) {
  std::vector<DfsBlock> blocks;
  if (model == Model::Weak) {
    for (int twoJ = 0; twoJ <= 2 * n; twoJ += 2) blocks.push_back(wcd_basis(n, n - twoJ));
  } else {
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2) blocks.push_back(scd_full_basis(n, twoJ));
  }
  return blocks;
}

BlockRestrictedOperator restrict_op(const ComplexMatrix& op, const std::vector<DfsBlock>& blocks,
                                    double tol) {
  if (blocks.empty()) throw std::invalid_argument("no blocks given");
  const int n = blocks.front().n;
  const Model model = blocks.front().model;
  // conserved-quantity precheck
  std::vector<PauliAxis> axes = model == Model::Weak
                                    ? std::vector<PauliAxis>{PauliAxis::Z}
                                    : std::vector<PauliAxis>{PauliAxis::X, PauliAxis::Y,
                                                             PauliAxis::Z};
  for (PauliAxis ax : axes) {
    const ComplexMatrix s = collective_op(ax, n);
    if (max_abs(commutator(op, s)) > 1e-8)
      throw std::invalid_argument("operator does not commute with the collective couplings");
  }

  BlockRestrictedOperator out;
  out.model = model;
  out.n = n;
  for (const DfsBlock& block : blocks) {
    if (block.n != n || block.model != model)
      throw DimensionMismatchError("mixed block families");
    const ComplexMatrix opb = op * block.basis;
    const ComplexMatrix c = block.basis.adjoint() * opb;
    out.leakage = std::max(out.leakage, max_abs(ComplexMatrix(opb - block.basis * c)));
    out.twoJs.push_back(block.twoJ);
    if (model == Model::Weak) {
      out.mats.push_back(c);
      continue;
    }
    // commutant side: c must be M ⊗ I_{d_J}
    const int nj = block.degeneracy();
    const int dj = block.dim_component();
    ComplexMatrix m = ComplexMatrix::Zero(nj, nj);
    for (int l = 0; l < nj; ++l)
      for (int lp = 0; lp < nj; ++lp) {
        Complex acc = 0.0;
        for (int mu = 0; mu < dj; ++mu) acc += c(l * dj + mu, lp * dj + mu);
        m(l, lp) = acc / static_cast<double>(dj);
      }
    ComplexMatrix ideal = ComplexMatrix::Zero(c.rows(), c.cols());
    for (int l = 0; l < nj; ++l)
      for (int lp = 0; lp < nj; ++lp)
        for (int mu = 0; mu < dj; ++mu) ideal(l * dj + mu, lp * dj + mu) = m(l, lp);
    const double dev = max_abs(ComplexMatrix(c - ideal));
    if (dev > tol)
      throw std::invalid_argument("operator is not of commutant form M ⊗ I on a block");
    out.mats.push_back(std::move(m));
  }
  if (out.leakage > tol) throw std::invalid_argument("operator leaks out of the DFS blocks");
  return out;
}

LieBasis lie_closure(const std::vector<BlockRestrictedOperator>& generators, double tol) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  LieBasis basis;
  std::vector<Eigen::VectorXd> flats;
  std::vector<Eigen::VectorXd> mix_cols;

  Eigen::Index flat_dim = 0;
  for (const auto& m : generators.front().mats) flat_dim += 2 * m.size();

  auto try_admit = [&](BlockRestrictedOperator cand, const Derivation& der) {
    Eigen::VectorXd f = flatten(cand);
    Eigen::VectorXd coefs(static_cast<Eigen::Index>(flats.size()) + 1);
    for (size_t j = 0; j < flats.size(); ++j) {
      const double c = flats[j].dot(f);
      coefs(static_cast<Eigen::Index>(j)) = c;
      f -= c * flats[j];
    }
    const double r = f.norm();
    if (r <= tol) return false;
    coefs(static_cast<Eigen::Index>(flats.size())) = r;
    // rebuild the orthonormal remainder in matrix form
    BlockRestrictedOperator e = cand;
    for (size_t j = 0; j < basis.elements.size(); ++j)
      e = e.plus(basis.elements[j].scaled(-coefs(static_cast<Eigen::Index>(j))));
    e = e.scaled(1.0 / r);
    flats.push_back(flatten(e));  // re-flatten to keep vectors and matrices in sync
    basis.elements.push_back(std::move(e));
    basis.sources.push_back(der);
    mix_cols.push_back(coefs);
    return true;
  };

  // seeds: i * generator, traceless per block
  for (size_t g = 0; g < generators.size(); ++g) {
    BlockRestrictedOperator seed = generators[g];
    for (auto& m : seed.mats) m *= Complex(0.0, 1.0);
    seed.project_traceless();
    Derivation der;
    der.is_seed = true;
    der.seed = static_cast<int>(g);
    try_admit(std::move(seed), der);
  }

  // breadth-first commutator sweep
  std::vector<std::pair<int, int>> pending;
  for (int k = 0; k < basis.dim(); ++k)
    for (int i = 0; i < k; ++i) pending.emplace_back(i, k);
  size_t head = 0;
  while (head < pending.size()) {
    const auto [i, k] = pending[head++];
    if (basis.dim() >= flat_dim) break;  // algebra cannot grow further
    BlockRestrictedOperator cand = basis.elements[i].comm(basis.elements[k]);
    Derivation der;
    der.is_seed = false;
    der.lhs = i;
    der.rhs = k;
    if (try_admit(std::move(cand), der)) {
      const int now = basis.dim() - 1;
      for (int j = 0; j < now; ++j) pending.emplace_back(j, now);
    }
  }

  basis.mix = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int k = 0; k < basis.dim(); ++k)
    basis.mix.col(k).head(mix_cols[k].size()) = mix_cols[k];
  return basis;
}

std::vector<int> LieBasis::per_block_dims(double tol) const {
  std::vector<int> dims;
  if (elements.empty()) return dims;
  for (size_t b = 0; b < elements.front().mats.size(); ++b) {
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(elements.size()),
                          2 * elements.front().mats[b].size());
    for (size_t k = 0; k < elements.size(); ++k) {
      BlockRestrictedOperator only = elements[k];
      for (size_t bb = 0; bb < only.mats.size(); ++bb)
        if (bb != b) only.mats[bb].setZero();
      Eigen::VectorXd f = flatten(only);
      // extract just block b's coordinates
      Eigen::Index at = 0;
      for (size_t bb = 0; bb < b; ++bb) at += 2 * elements.front().mats[bb].size();
      stack.row(static_cast<Eigen::Index>(k)) =
          f.segment(at, 2 * elements.front().mats[b].size());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > std::max(tol, 1e-10)) ++rank;
    dims.push_back(rank);
  }
  return dims;
}

double span_residual(const LieBasis& basis, const BlockRestrictedOperator& x) {
  BlockRestrictedOperator r = x;
  for (const auto& e : basis.elements) r = r.plus(e.scaled(-e.inner(r)));
  return r.norm();
}

IndependenceReport independence_certificate(const LieBasis& basis,
                                            const std::vector<DfsBlock>& blocks, double tol) {
  IndependenceReport report;
  const std::vector<int> closure_dims = basis.per_block_dims();
  for (size_t b = 0; b < blocks.size(); ++b) {
    // the information-carrying factor has dimension n_J (strong) or d_K (weak),
    // which is the path count in both models
    const int d = blocks[b].degeneracy();
    IndependenceReport::Entry entry;
    entry.twoJ = blocks[b].twoJ;
    entry.block_dim = d;
    entry.closure_dim = b < closure_dims.size() ? closure_dims[b] : 0;
    entry.worst_residual = 0.0;
    entry.pass = true;
    if (d > 1) {
      // su(d) basis supported on this block only
      std::vector<ComplexMatrix> su;
      for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
          ComplexMatrix a = ComplexMatrix::Zero(d, d);
          a(p, q) = Complex(0, 1);
          a(q, p) = Complex(0, 1);
          su.push_back(a / std::sqrt(2.0));
          ComplexMatrix s = ComplexMatrix::Zero(d, d);
          s(p, q) = 1.0;
          s(q, p) = -1.0;
          su.push_back(s / std::sqrt(2.0));
        }
      for (int k = 1; k < d; ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(d, d);
        for (int j = 0; j < k; ++j) a(j, j) = Complex(0, 1);
        a(k, k) = Complex(0, -static_cast<double>(k));
        su.push_back(a / std::sqrt(static_cast<double>(k) + k * static_cast<double>(k)));
      }
      for (const ComplexMatrix& g : su) {
        BlockRestrictedOperator x;
        x.model = blocks[b].model;
        x.n = blocks[b].n;
        for (size_t bb = 0; bb < blocks.size(); ++bb) {
          x.twoJs.push_back(blocks[bb].twoJ);
          const int db = blocks[bb].degeneracy();
          x.mats.push_back(bb == b ? g : ComplexMatrix::Zero(db, db));
        }
        entry.worst_residual = std::max(entry.worst_residual, span_residual(basis, x));
      }
      entry.pass = entry.worst_residual <= tol &&
                   entry.closure_dim == d * d - 1;
    }
    report.pass = report.pass && entry.pass;
    report.entries.push_back(entry);
  }
  return report;
}

ComplexMatrix conjugate_hamiltonian(const ComplexMatrix& u, const ComplexMatrix& h) {
  if (!is_unitary(u)) throw std::invalid_argument("conjugation requires a unitary");
  return u * h * u.adjoint();
}

namespace {

// The three n=3 exchanges assembled over {J=3/2; J=1/2 paths}, presented in
// the frame of the explicit three-qubit states (whose lambda=1 column is the
// negative of the recursion's).
ComplexMatrix n3_exchange(int i, int j) {
  static const std::vector<DfsBlock> blocks = standard_blocks(Model::Strong, 3);
  const BlockRestrictedOperator r = restrict_op(exchange_op(i, j, 3), blocks);
  // blocks are twoJ-ascending: mats[0] = J=1/2 (2x2), mats[1] = J=3/2 (1x1)
  ComplexMatrix full = ComplexMatrix::Zero(3, 3);
  full(0, 0) = r.mats[1](0, 0);
  full.block(1, 1, 2, 2) = r.mats[0];
  ComplexMatrix d = ComplexMatrix::Identity(3, 3);
  d(2, 2) = -1.0;
  return d * full * d;
}

void push(IdentityReport& rep, const std::string& name, const ComplexMatrix& got,
          const ComplexMatrix& want) {
  rep.entries.push_back({name, max_abs(ComplexMatrix(got - want))});
}

}  // namespace

IdentityReport constructive_identities(Model model, int n, double tol) {
  IdentityReport rep;
  const Complex I1(0.0, 1.0);
  if (model == Model::Weak && n == 2) {
    ComplexMatrix a = ComplexMatrix::Zero(4, 4);
    a(2, 2) = 1.0;  // |10><10|
    const ComplexMatrix e12 = exchange_op(1, 2, 2);
    const ComplexMatrix ybar = I1 * commutator(a, e12);
    const ComplexMatrix zbar = I1 * commutator(e12, ybar);
    const ComplexMatrix xbar = I1 * commutator(ybar, zbar);
    ComplexMatrix ywant = ComplexMatrix::Zero(4, 4), zwant = ComplexMatrix::Zero(4, 4),
                  xwant = ComplexMatrix::Zero(4, 4);
    ywant(1, 2) = Complex(0, -1);
    ywant(2, 1) = Complex(0, 1);
    zwant(1, 1) = -2.0;
    zwant(2, 2) = 2.0;
    xwant(1, 2) = 4.0;
    xwant(2, 1) = 4.0;
    push(rep, "weak n=2: Y = i[A, E12]", ybar, ywant);
    push(rep, "weak n=2: Z = i[E12, Y]", zbar, zwant);
    push(rep, "weak n=2: X = i[Y, Z]", xbar, xwant);
    push(rep, "weak n=2: su(2) cycle i[Z, X] = 16 Y", I1 * commutator(zbar, xbar),
         ComplexMatrix(16.0 * ybar));
  } else if (model == Model::Strong && n == 3) {
    const ComplexMatrix e12 = n3_exchange(1, 2), e13 = n3_exchange(1, 3), e23 = n3_exchange(2, 3);
    ComplexMatrix proj = ComplexMatrix::Zero(3, 3), zlike = ComplexMatrix::Zero(3, 3),
                  flip = ComplexMatrix::Zero(3, 3);
    proj(0, 0) = 1.0;
    zlike(1, 1) = 1.0;
    zlike(2, 2) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    // the encoded-Z combination carries a harmless scalar 1/2 on the
    // one-dimensional J=3/2 irrep; on the encoded (J=1/2) sector it is
    // exactly sigma_z
    zlike(0, 0) = 0.5;
    ComplexMatrix e12want = ComplexMatrix::Zero(3, 3);
    e12want(0, 0) = 1.0;
    e12want(1, 1) = -1.0;
    e12want(2, 2) = 1.0;
    push(rep, "strong n=3: E12 = diag(1,-1,1)", e12, e12want);
    push(rep, "strong n=3: (E12+E13+E23)/3 = J=3/2 projector",
         ComplexMatrix((e12 + e13 + e23) / 3.0), proj);
    push(rep, "strong n=3: (-E12+E13+E23)/2 = encoded Z (+ 1/2 on J=3/2)",
         ComplexMatrix((-e12 + e13 + e23) / 2.0), zlike);
    push(rep, "strong n=3: (E13-E23)/sqrt(3) = encoded X",
         ComplexMatrix((e13 - e23) / std::sqrt(3.0)), flip);
  } else if (model == Model::Strong && n == 4) {
    static const std::vector<DfsBlock> blocks = standard_blocks(Model::Strong, 4);
    auto ex = [&](int i, int j) { return restrict_op(exchange_op(i, j, 4), blocks); };
    const auto e12 = ex(1, 2), e13 = ex(1, 3), e23 = ex(2, 3), e34 = ex(3, 4);
    // J=0 encoded su(2): blocks[0] is twoJ=0 (2x2)
    const ComplexMatrix x0 = (e23.mats[0] - e13.mats[0]) / std::sqrt(3.0);
    const ComplexMatrix y0 =
        I1 / (2.0 * std::sqrt(3.0)) * commutator(ComplexMatrix(e13.mats[0] - e23.mats[0]),
                                                 e34.mats[0]);
    const ComplexMatrix z0 = I1 / 2.0 * commutator(y0, x0);
    push(rep, "strong n=4: X on DFS4(0)", x0, pauli_x());
    push(rep, "strong n=4: Y on DFS4(0)", y0, pauli_y());
    push(rep, "strong n=4: Z on DFS4(0)", z0, pauli_z());
    push(rep, "strong n=4: Z = -E12 on DFS4(0)", z0, ComplexMatrix(-e12.mats[0]));
    // J=1 su(3) generators: blocks[1] is twoJ=2 (3x3). The target matrices are
    // stated in descending path order, so conjugate the restrictions by the
    // order-reversing permutation first. Exchanges on disjoint pairs commute
    // (e.g. [E12, E34] = 0), so the level-0 <-> level-2 coupling cannot come
    // from a single exchange commutator; build it from the two nearest-level
    // couplings instead and derive the rest of the su(2) triple from it.
    auto rev = [](const ComplexMatrix& m) {
      const long d = m.rows();
      ComplexMatrix r(d, d);
      for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) r(i, j) = m(d - 1 - i, d - 1 - j);
      return r;
    };
    const ComplexMatrix f12 = rev(e12.mats[1]), f13 = rev(e13.mats[1]), f23 = rev(e23.mats[1]),
                        f34 = rev(e34.mats[1]);
    const ComplexMatrix y01 =
        I1 / (2.0 * std::sqrt(2.0)) * commutator(ComplexMatrix(f13 + f23), f34);
    const ComplexMatrix y12 = I1 / std::sqrt(3.0) * commutator(f13, f23);
    const ComplexMatrix y13 = I1 * commutator(y12, y01);
    const ComplexMatrix x13 = I1 / 2.0 * commutator(f12, y13);
    const ComplexMatrix z13 = I1 / 2.0 * commutator(y13, x13);
    const ComplexMatrix y23 = 2.0 * I1 / std::sqrt(3.0) * commutator(f23, z13);
    ComplexMatrix y13w = ComplexMatrix::Zero(3, 3), x13w = ComplexMatrix::Zero(3, 3),
                  z13w = ComplexMatrix::Zero(3, 3), y23w = ComplexMatrix::Zero(3, 3);
    y13w(0, 2) = Complex(0, -1);
    y13w(2, 0) = Complex(0, 1);
    x13w(0, 2) = 1.0;
    x13w(2, 0) = 1.0;
    z13w(0, 0) = 1.0;
    z13w(2, 2) = -1.0;
    y23w(1, 2) = Complex(0, -1);
    y23w(2, 1) = Complex(0, 1);
    push(rep, "strong n=4: Y13 on DFS4(1)", y13, y13w);
    push(rep, "strong n=4: X13 on DFS4(1)", x13, x13w);
    push(rep, "strong n=4: Z13 on DFS4(1)", z13, z13w);
    push(rep, "strong n=4: Y23 on DFS4(1)", y23, y23w);
  } else {
    throw std::invalid_argument("constructive identities are defined for weak n=2, strong n=3,4");
  }
  for (const auto& e : rep.entries) rep.worst = std::max(rep.worst, e.deviation);
  rep.pass = rep.worst <= tol;
  return rep;
}

IdentityReport exchange_boundary_check(int n, int twoJ, double tol) {
  const DfsBlock block = scd_full_basis(n, twoJ);
  const BlockRestrictedOperator r =
      restrict_op(exchange_op(n - 1, n, n), std::vector<DfsBlock>{block});
  const int nj = block.degeneracy();
  const double J = 0.5 * twoJ;
  const double cosT = 1.0 / (2.0 * J + 1.0);
  const double sinT = 2.0 * std::sqrt(J * (J + 1.0)) / (2.0 * J + 1.0);

  ComplexMatrix want = ComplexMatrix::Zero(nj, nj);
  std::map<std::vector<int>, std::pair<int, int>> pairs;  // prefix -> (BT idx, TB idx)
  for (int p = 0; p < nj; ++p) {
    const auto& path = block.paths[p];
    const int s1 = path[n - 2], s2 = path[n - 1];
    if ((s1 == -1 && s2 == -1) || (s1 == 1 && s2 == 1)) {
      want(p, p) = 1.0;  // TT or BB
      continue;
    }
    std::vector<int> prefix(path.begin(), path.end() - 2);
    auto& pr = pairs.try_emplace(std::move(prefix), std::make_pair(-1, -1)).first->second;
    if (s1 == 1) pr.first = p;   // BT: up then down
    else pr.second = p;          // TB: down then up
  }
  for (const auto& [prefix, pr] : pairs) {
    const auto [bt, tb] = pr;
    if (bt >= 0) want(bt, bt) = -cosT;
    if (tb >= 0) want(tb, tb) = cosT;
    if (bt >= 0 && tb >= 0) {
      want(bt, tb) = sinT;
      want(tb, bt) = sinT;
    }
  }
  IdentityReport rep;
  rep.entries.push_back({"boundary exchange form (n=" + std::to_string(n) +
                             ", 2J=" + std::to_string(twoJ) + ")",
                         max_abs(ComplexMatrix(r.mats[0] - want))});
  rep.worst = rep.entries.front().deviation;
  rep.pass = rep.worst <= tol;
  return rep;
}

}  // namespace dfs
