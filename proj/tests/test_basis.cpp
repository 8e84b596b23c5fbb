#include <doctest.h>

#include "dfs/basis.hpp"
#include "dfs/operators.hpp"

using namespace dfs;

TEST_CASE("degeneracy formula vs lattice-walk oracle up to n = 14") {
  for (int n = 1; n <= 14; ++n)
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2)
      CHECK(scd_degeneracy(n, twoJ) == scd_path_count(n, twoJ));
  CHECK_THROWS(scd_degeneracy(4, 1));  // parity violation
  CHECK_THROWS(scd_degeneracy(4, 6));  // J > n/2
}

TEST_CASE("small degeneracies match the published triangle corner") {
  CHECK(scd_degeneracy(4, 0) == 2);
  CHECK(scd_degeneracy(4, 2) == 3);
  CHECK(scd_degeneracy(6, 0) == 5);
  CHECK(scd_degeneracy(6, 2) == 9);
  CHECK(scd_degeneracy(6, 4) == 5);
}

TEST_CASE("Pascal-like recurrence of block degeneracies") {
  // n_J(n) = n_{J-1/2}(n-1) + n_{J+1/2}(n-1)
  for (int n = 2; n <= 12; ++n)
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2) {
      BigInt want = 0;
      if (twoJ - 1 >= 0 && twoJ - 1 <= n - 1) want += scd_path_count(n - 1, twoJ - 1);
      if (twoJ + 1 <= n - 1) want += scd_path_count(n - 1, twoJ + 1);
      CHECK(scd_path_count(n, twoJ) == want);
    }
}

TEST_CASE("paths are ordered by ascending running-J sequence") {
  const auto paths = scd_paths(3, 1);
  REQUIRE(paths.size() == 2);
  // first path dips down at step 2 (J: 1/2, 0, 1/2), second goes up first
  CHECK(paths[0] == std::vector<int>({1, -1, 1}));
  CHECK(paths[1] == std::vector<int>({1, 1, -1}));
}

TEST_CASE("weak basis columns are bitstrings with the right weight") {
  const DfsBlock b = wcd_basis(3, 1);  // lambda = 1 -> one 1-bit... #0-#1=1 -> one 1
  CHECK(b.degeneracy() == 3);
  CHECK(b.lambda() == 1);
  const ComplexMatrix sz = collective_op(PauliAxis::Z, 3);
  CHECK(max_abs(sz * b.basis - 1.0 * b.basis) < 1e-14);
}

TEST_CASE("strong blocks are orthonormal and complete") {
  for (int n = 2; n <= 5; ++n) {
    long total = 0;
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2) {
      const DfsBlock b = scd_full_basis(n, twoJ);
      const ComplexMatrix g = b.basis.adjoint() * b.basis;
      CHECK(max_abs(g - ComplexMatrix::Identity(g.rows(), g.cols())) < 1e-12);
      total += b.basis.cols();
    }
    CHECK(total == (1L << n));
  }
}

TEST_CASE("strong block columns carry total spin J and the right S_z ladder") {
  const int n = 4, twoJ = 2;
  const DfsBlock b = scd_full_basis(n, twoJ);
  const ComplexMatrix s2 = partial_sq_op(n, n);
  // (S^n)^2 eigenvalue with unscaled Paulis is 4 J(J+1) = twoJ(twoJ+2)
  CHECK(max_abs(s2 * b.basis - double(twoJ * (twoJ + 2)) * b.basis) < 1e-12);
  const ComplexMatrix sz = collective_op(PauliAxis::Z, n);
  for (int l = 0; l < b.degeneracy(); ++l)
    for (int mu = 0; mu < b.dim_component(); ++mu) {
      // mu descends from m_J = J; sigma_z = diag(1,-1) with |1> = spin-up
      const double eig = -double(twoJ - 2 * mu);
      const auto col = b.basis.col(l * b.dim_component() + mu);
      CHECK((sz * col - eig * col).norm() < 1e-12);
    }
}

TEST_CASE("n = 2 singlet and explicit paper-free sanity states") {
  const DfsBlock b = scd_full_basis(2, 0);
  StateVector want = StateVector::Zero(4);
  want(1) = 1.0 / std::sqrt(2.0);   // |01>
  want(2) = -1.0 / std::sqrt(2.0);  // |10>
  const Complex ph = want.dot(b.basis.col(0));
  CHECK(std::abs(std::abs(ph) - 1.0) < 1e-12);
  CHECK((b.basis.col(0) * ph - want).norm() < 1e-12);  // equal up to phase
  const StateVector prod = singlet_product_state(4);
  CHECK(std::abs(prod.norm() - 1.0) < 1e-13);
  // singlet product lies inside the (4, 0) block
  const DfsBlock b40 = scd_full_basis(4, 0);
  const StateVector proj = b40.basis * (b40.basis.adjoint() * prod);
  CHECK((proj - prod).norm() < 1e-12);
}

TEST_CASE("two-deep closed formulas agree with the recursion") {
  for (int n = 3; n <= 6; ++n)
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2)
      for (TwoDeepKind kind :
           {TwoDeepKind::TT, TwoDeepKind::BT, TwoDeepKind::TB, TwoDeepKind::BB}) {
        std::vector<int> path;
        try {
          path = two_deep_prefix(n, twoJ, kind);
        } catch (const std::exception&) {
          continue;  // kind not admissible at this (n, J)
        }
        if (kind == TwoDeepKind::TT || kind == TwoDeepKind::BT) {
          path.push_back(kind == TwoDeepKind::TT ? -1 : +1);
          path.push_back(-1);
        } else {
          path.push_back(kind == TwoDeepKind::TB ? -1 : +1);
          path.push_back(+1);
        }
        const StateVector a = two_deep_state(n, twoJ, kind);
        const StateVector r = scd_maximal_state(path);
        CHECK((a - r).norm() < 1e-12);
      }
}

TEST_CASE("lowering operator takes m_J down one unit") {
  const DfsBlock b = scd_full_basis(3, 3);
  const ComplexMatrix low = lowering_op(3);
  const StateVector top = b.basis.col(0);
  const StateVector next = b.basis.col(1);
  const double twoJ = 3;
  const double j = twoJ / 2;
  const StateVector lowered = low * top / std::sqrt(j * (j + 1) - j * (j - 1));
  CHECK((lowered - next).norm() < 1e-12);
}
