#include "dfs/basis.hpp"

#include <bit>
#include <stdexcept>

#include "dfs/jsonio.hpp"

namespace dfs {

namespace {

void require_strong_block(int n, int twoJ) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (twoJ < 0 || twoJ > n) throw std::invalid_argument("2J out of range [0, n]");
  if ((n + twoJ) % 2 != 0) throw std::invalid_argument("n and 2J must have equal parity");
}

}  // namespace

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt scd_degeneracy(int n, int twoJ) {
  require_strong_block(n, twoJ);
  // (2J+1) n! / ((n/2+J+1)! (n/2-J)!) = (2J+1)/(n/2+J+1) * C(n, (n-2J)/2)
  BigInt num = BigInt(twoJ + 1) * binomial(n, (n - twoJ) / 2);
  BigInt den = (n + twoJ) / 2 + 1;
  if (num % den != 0) throw std::logic_error("degeneracy formula not integral");
  return num / den;
}

BigInt scd_path_count(int n, int twoJ) {
  require_strong_block(n, twoJ);
  // ways[t] = walks of current length ending at 2J = t
  std::vector<BigInt> ways(n + 1, 0);
  ways[1] = 1;
  for (int step = 2; step <= n; ++step) {
    std::vector<BigInt> next(n + 1, 0);
    for (int t = 0; t <= step - 1; ++t) {
      if (ways[t] == 0) continue;
      next[t + 1] += ways[t];
      if (t >= 1) next[t - 1] += ways[t];
    }
    ways.swap(next);
  }
  return ways[twoJ];
}

std::vector<std::vector<int>> scd_paths(int n, int twoJ) {
  require_strong_block(n, twoJ);
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  cur.reserve(n);
  // Depth-first with the down step explored first, so blocks come out
  // ascending in the running-J sequence.
  auto rec = [&](auto&& self, int pos, int t) -> void {
    if (pos == n) {
      if (t == twoJ) out.push_back(cur);
      return;
    }
    // prune: remaining steps must be able to reach twoJ
    int rem = n - pos;
    if (std::abs(t - twoJ) > rem) return;
    if (t >= 1) {
      cur.push_back(-1);
      self(self, pos + 1, t - 1);
      cur.pop_back();
    }
    cur.push_back(+1);
    self(self, pos + 1, t + 1);
    cur.pop_back();
  };
  rec(rec, 0, 0);
  return out;
}

DfsBlock wcd_basis(int n, int lambdaJ) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (std::abs(lambdaJ) > n || (n + lambdaJ) % 2 != 0)
    throw std::invalid_argument("lambda_J must satisfy |lambda| <= n with equal parity");
  const long dim = check_qubits(n);
  const int ones = (n - lambdaJ) / 2;  // lambda = #0 - #1
  DfsBlock block;
  block.model = Model::Weak;
  block.n = n;
  block.twoJ = n - lambdaJ;  // 2 * (#ones)
  std::vector<long> kept;
  for (long m = 0; m < dim; ++m) {
    if (std::popcount(static_cast<unsigned long>(m)) != ones) continue;
    kept.push_back(m);
    std::vector<int> path(n);
    for (int q = 0; q < n; ++q) path[q] = ((m >> (n - 1 - q)) & 1) ? -1 : +1;
    block.paths.push_back(std::move(path));
  }
  block.basis = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(kept.size()));
  for (size_t c = 0; c < kept.size(); ++c) block.basis(kept[c], static_cast<Eigen::Index>(c)) = 1.0;
  return block;
}

ComplexMatrix lowering_op(int n) {
  const long dim = check_qubits(n);
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (long m = 0; m < dim; ++m)
    for (int q = 0; q < n; ++q) {
      const long mask = 1L << (n - 1 - q);
      if (m & mask) op(m ^ mask, m) += 1.0;
    }
  return op;
}

StateVector scd_maximal_state(const std::vector<int>& path) {
  if (path.empty() || path[0] != 1) throw std::invalid_argument("path must start with an up step");
  check_qubits(static_cast<int>(path.size()));
  StateVector state(2);
  state << 0.0, 1.0;  // |1> = spin-up
  int twoJ = 1;
  for (size_t k = 1; k < path.size(); ++k) {
    StateVector up = StateVector::Zero(2), down = StateVector::Zero(2);
    up(1) = 1.0;
    down(0) = 1.0;
    if (path[k] == 1) {
      state = kron(state, up).eval();
      twoJ += 1;
    } else if (path[k] == -1) {
      twoJ -= 1;
      if (twoJ < 0) throw std::invalid_argument("path dips below J = 0");
      const double J = 0.5 * twoJ;
      const double alpha = -std::sqrt((2.0 * J + 1.0) / (2.0 * J + 2.0));
      const double beta = 1.0 / std::sqrt(2.0 * J + 2.0);
      StateVector lowered = lowering_op(static_cast<int>(k)) * state / std::sqrt(2.0 * J + 1.0);
      state = (alpha * kron(state, down) + beta * kron(lowered, up)).eval();
    } else {
      throw std::invalid_argument("path steps must be +-1");
    }
  }
  return state;
}

DfsBlock scd_full_basis(int n, int twoJ) {
  require_strong_block(n, twoJ);
  const long dim = check_qubits(n);
  DfsBlock block;
  block.model = Model::Strong;
  block.n = n;
  block.twoJ = twoJ;
  block.paths = scd_paths(n, twoJ);
  const int dJ = twoJ + 1;
  block.basis = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(block.paths.size()) * dJ);
  const ComplexMatrix low = lowering_op(n);
  const double J = 0.5 * twoJ;
  for (size_t p = 0; p < block.paths.size(); ++p) {
    StateVector state = scd_maximal_state(block.paths[p]);
    for (int mu = 0; mu < dJ; ++mu) {  // m_J = J - mu, descending
      block.basis.col(static_cast<Eigen::Index>(p) * dJ + mu) = state;
      if (mu + 1 < dJ) {
        const double m = J - mu;
        state = (low * state / std::sqrt(J * (J + 1.0) - m * (m - 1.0))).eval();
      }
    }
  }
  return block;
}

StateVector singlet_product_state(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
  check_qubits(n);
  StateVector singlet(4);
  singlet << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;  // (|01> - |10>)/sqrt(2)
  StateVector state = singlet;
  for (int k = 2; k < n; k += 2) state = kron(state, singlet).eval();
  return state;
}

std::vector<int> two_deep_prefix(int n, int twoJ, TwoDeepKind kind) {
  if (n < 3) throw std::invalid_argument("two-deep states need n >= 3");
  require_strong_block(n, twoJ);
  int twoJc = twoJ;
  switch (kind) {
    case TwoDeepKind::TT: twoJc = twoJ + 2; break;
    case TwoDeepKind::BT:
    case TwoDeepKind::TB: twoJc = twoJ; break;
    case TwoDeepKind::BB: twoJc = twoJ - 2; break;
  }
  const int twoJmid = (kind == TwoDeepKind::TT || kind == TwoDeepKind::BT) ? twoJ + 1 : twoJ - 1;
  if (twoJmid < 0 || twoJc < 0 || twoJc > n - 2)
    throw std::invalid_argument("requested two-deep state does not exist");
  auto prefixes = scd_paths(n - 2, twoJc);
  if (prefixes.empty()) throw std::invalid_argument("requested two-deep state does not exist");
  return prefixes.front();
}

StateVector two_deep_state(int n, int twoJ, TwoDeepKind kind) {
  const std::vector<int> prefix = two_deep_prefix(n, twoJ, kind);
  check_qubits(n);
  const double J = 0.5 * twoJ;
  int tc = 0;
  for (int s : prefix) tc += s;
  const double Jc = 0.5 * tc;

  // child states |c; m> for the handful of m values the formulas touch
  const ComplexMatrix low = lowering_op(n - 2);
  auto child = [&](double m) {
    StateVector s = scd_maximal_state(prefix);
    for (double mm = Jc; mm > m + 0.5; mm -= 1.0)
      s = (low * s / std::sqrt(Jc * (Jc + 1.0) - mm * (mm - 1.0))).eval();
    return s;
  };

  // two-qubit tails, |1> = spin-up
  StateVector t00 = StateVector::Zero(4), t01 = StateVector::Zero(4);
  StateVector t10 = StateVector::Zero(4), t11 = StateVector::Zero(4);
  t00(0) = 1.0;  // down down
  t01(1) = 1.0;  // down up
  t10(2) = 1.0;  // up down
  t11(3) = 1.0;  // up up

  struct Term {
    double coef;
    double m;
    const StateVector* tail;
  };
  std::vector<Term> terms;
  switch (kind) {
    case TwoDeepKind::TT:
      terms = {{std::sqrt((2 * J + 1) / (2 * J + 3)), J + 1, &t00},
               {-std::sqrt((2 * J + 1) / ((2 * J + 2) * (2 * J + 3))), J, &t10},
               {-std::sqrt((2 * J + 1) / ((2 * J + 2) * (2 * J + 3))), J, &t01},
               {std::sqrt(2.0 / ((2 * J + 2) * (2 * J + 3))), J - 1, &t11}};
      break;
    case TwoDeepKind::BT:
      terms = {{-std::sqrt((2 * J + 1) / (2 * J + 2)), J, &t10},
               {std::sqrt(1.0 / ((2 * J + 1) * (2 * J + 2))), J, &t01},
               {std::sqrt(2 * J / ((2 * J + 1) * (2 * J + 2))), J - 1, &t11}};
      break;
    case TwoDeepKind::TB:
      terms = {{-std::sqrt(2 * J / (2 * J + 1)), J, &t01},
               {std::sqrt(1.0 / (2 * J + 1)), J - 1, &t11}};
      break;
    case TwoDeepKind::BB:
      terms = {{1.0, J - 1, &t11}};
      break;
  }

  StateVector out = StateVector::Zero(1L << n);
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    out += t.coef * kron(child(t.m), *t.tail);
  }
  return out;
}

std::string DfsBlock::to_json() const {
  nlohmann::json j;
  j["model"] = model == Model::Strong ? "strong" : "weak";
  j["n"] = n;
  j["twoJ"] = twoJ;
  if (model == Model::Weak) j["lambda"] = lambda();
  j["degeneracy"] = degeneracy();
  j["dim_component"] = dim_component();
  j["paths"] = paths;
  j["basis"] = matrix_to_json(basis);
  return j.dump(2);
}

}  // namespace dfs
