#include <doctest.h>

#include "dfs/operators.hpp"
#include "dfs/universality.hpp"

using namespace dfs;

namespace {

std::vector<BlockRestrictedOperator> restricted_nn_exchanges(
    int n, const std::vector<DfsBlock>& blocks) {
  std::vector<BlockRestrictedOperator> out;
  for (int i = 1; i < n; ++i) out.push_back(restrict_op(exchange_op(i, i + 1, n), blocks));
  return out;
}

std::vector<BlockRestrictedOperator> weak_universal(int n,
                                                    const std::vector<DfsBlock>& blocks) {
  std::vector<BlockRestrictedOperator> out;
  for (int i = 1; i < n; ++i) {
    out.push_back(restrict_op(exchange_op(i, i + 1, n), blocks));
    out.push_back(
        restrict_op(build(OperatorSpec::t_family(i, i + 1, 1, 0, 0, 0, 0.0, n)), blocks));
    out.push_back(
        restrict_op(build(OperatorSpec::t_family(i, i + 1, 0, 0, 0, 1, 0.0, n)), blocks));
  }
  out.push_back(restrict_op(build(OperatorSpec::t_family(1, 2, 0, 0, 1, 0, 0.0, n)), blocks));
  return out;
}

}  // namespace

TEST_CASE("restrict_op rejects operators that leak out of the decomposition") {
  const auto blocks = standard_blocks(Model::Strong, 3);
  CHECK_THROWS(restrict_op(sigma_on_site(PauliAxis::X, 1, 3), blocks));
}

TEST_CASE("restrict_op strips a verified identity factor on strong blocks") {
  const int n = 3;
  const auto blocks = standard_blocks(Model::Strong, n);
  const BlockRestrictedOperator e12 = restrict_op(exchange_op(1, 2, n), blocks);
  REQUIRE(e12.mats.size() == 2);
  CHECK(e12.mats[0].rows() == 2);  // J = 1/2 block, n_J = 2
  CHECK(e12.mats[1].rows() == 1);  // J = 3/2 block
  CHECK(std::abs(e12.mats[1](0, 0) - Complex(1.0)) < 1e-12);
  // E_12 acts as diag(-1, 1) in path order (down-first)
  CHECK(std::abs(e12.mats[0](0, 0) - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(e12.mats[0](1, 1) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(e12.mats[0](0, 1)) < 1e-12);
}

TEST_CASE("weak restriction keeps the full block matrix") {
  const int n = 2;
  const auto blocks = standard_blocks(Model::Weak, n);
  const BlockRestrictedOperator e = restrict_op(exchange_op(1, 2, n), blocks);
  for (size_t b = 0; b < blocks.size(); ++b)
    CHECK(e.mats[b].rows() == blocks[b].degeneracy());
}

TEST_CASE("Lie closure of strong nearest-neighbor exchanges has dim n_J^2 - 1") {
  for (int n = 3; n <= 5; ++n) {
    const auto blocks = standard_blocks(Model::Strong, n);
    const LieBasis basis = lie_closure(restricted_nn_exchanges(n, blocks));
    const auto dims = basis.per_block_dims();
    for (size_t b = 0; b < blocks.size(); ++b) {
      const int nj = blocks[b].degeneracy();
      CHECK(dims[b] == nj * nj - 1);
    }
    const IndependenceReport rep = independence_certificate(basis, blocks);
    CHECK(rep.pass);
  }
}

TEST_CASE("Lie closure on the weak model reaches d_K^2 - 1 per sector") {
  for (int n = 2; n <= 4; ++n) {
    const auto blocks = standard_blocks(Model::Weak, n);
    const LieBasis basis = lie_closure(weak_universal(n, blocks));
    const auto dims = basis.per_block_dims();
    int total = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
      const int dk = blocks[b].degeneracy();
      CHECK(dims[b] == dk * dk - 1);
      total += dk * dk - 1;
    }
    CHECK(basis.dim() >= *std::max_element(dims.begin(), dims.end()));
    const IndependenceReport rep = independence_certificate(basis, blocks);
    CHECK(rep.pass);
    (void)total;
  }
}

TEST_CASE("closure is closed: pairwise commutators stay inside the span") {
  const auto blocks = standard_blocks(Model::Strong, 4);
  const LieBasis basis = lie_closure(restricted_nn_exchanges(4, blocks));
  for (int a = 0; a < basis.dim(); ++a)
    for (int b = a + 1; b < basis.dim(); ++b)
      CHECK(span_residual(basis, basis.elements[a].comm(basis.elements[b])) < 1e-8);
}

TEST_CASE("conjugated generators stay inside the closure span") {
  const auto blocks = standard_blocks(Model::Strong, 4);
  const auto gens = restricted_nn_exchanges(4, blocks);
  const LieBasis basis = lie_closure(gens);
  // exp(ad_X) Y for small flows via BCH truncation stays in the span
  BlockRestrictedOperator x = gens[0];
  BlockRestrictedOperator y = gens[2];
  for (auto* g : {&x, &y}) {
    for (auto& m : g->mats) m *= Complex(0, 1);
    g->project_traceless();
  }
  BlockRestrictedOperator conj = y.plus(x.comm(y).scaled(1.0));
  conj = conj.plus(x.comm(x.comm(y)).scaled(0.5));
  CHECK(span_residual(basis, conj) < 1e-8);
}

TEST_CASE("constructive commutator identities hold elementwise") {
  CHECK(constructive_identities(Model::Weak, 2).pass);
  CHECK(constructive_identities(Model::Strong, 3).pass);
  CHECK(constructive_identities(Model::Strong, 4).pass);
}

TEST_CASE("boundary exchange has the closed rotation form on every block") {
  for (int n = 3; n <= 6; ++n)
    for (int twoJ = n % 2; twoJ <= n; twoJ += 2) {
      const IdentityReport r = exchange_boundary_check(n, twoJ);
      CHECK(r.pass);
      CHECK(r.worst <= 1e-9);
    }
}
