#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbifold/frobenius.hpp"

using namespace orbifold;
using RT = Tensor<Rat>;
using Alg = FrobeniusAlgebra<Rat>;

namespace {

Alg z2_algebra(long long normalization) {
  return group_algebra<Rat>(GroupTable::cyclic(2), Rat(normalization));
}

Alg twisted_z2z2() {
  auto g = GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(2));
  // theta((a,b),(c,d)) = (-1)^{b c}; element index = 2a + b
  TwoCocycle<Rat> th = TwoCocycle<Rat>::trivial(4);
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y) {
      Index b = x % 2, c = y / 2;
      th.theta.at({x, y}) = (b * c) % 2 ? Rat(-1) : Rat(1);
    }
  return twisted_group_algebra<Rat>(g, th, Rat(4));
}

}  // namespace

TEST_CASE("trivial algebra passes every axiom") {
  auto rep = check_axioms(trivial_algebra<Rat>());
  CHECK(rep.all_delta_frobenius());
  CHECK(rep.separable);
}

TEST_CASE("Z/2 group algebra, delta-normalized") {
  auto A = z2_algebra(2);
  // Delta(e) = (e x e + u x u)/2, from inverting the Gram matrix 2*I
  CHECK(A.comul.at({0, 0, 0}) == Rat(1, 2));
  CHECK(A.comul.at({0, 1, 1}) == Rat(1, 2));
  CHECK(A.comul.at({0, 0, 1}) == Rat(0));
  CHECK(A.comul.at({1, 0, 1}) == Rat(1, 2));
  CHECK(A.comul.at({1, 1, 0}) == Rat(1, 2));
  auto rep = check_axioms(A);
  CHECK(rep.all_delta_frobenius());
}

TEST_CASE("Z/2 group algebra, unscaled counit: frobenius holds, delta-separability fails") {
  auto A = z2_algebra(1);
  auto rep = check_axioms(A);
  CHECK(rep.associative);
  CHECK(rep.unital);
  CHECK(rep.coassociative);
  CHECK(rep.counital);
  CHECK(rep.frobenius);
  CHECK(rep.symmetric);
  CHECK(rep.pairing_nondegenerate);
  CHECK_FALSE(rep.delta_separable);
  CHECK(rep.separable);
  // mu . Delta = 2 * id here: the copairing scales up when eps scales down
  auto mu_comul = contract(A.comul, A.mu, {{1, 0}, {2, 1}});
  CHECK(mu_comul == RT::identity(2).scaled(Rat(2)));
}

TEST_CASE("endomorphism datum End(k^2)") {
  auto A = endomorphism_orbifold_datum<Rat>(2);
  CHECK(A.dim == 4);
  auto rep = check_axioms(A);
  CHECK(rep.all_delta_frobenius());
  CHECK(center(A).basis.size() == 1);
  // counit is 2 * trace
  CHECK(A.counit.at({0}) == Rat(2));
  CHECK(A.counit.at({3}) == Rat(2));
  CHECK(A.counit.at({1}) == Rat(0));
}

TEST_CASE("comul_from_form on End(k^2) with eps = 2 tr reproduces the datum") {
  auto A = endomorphism_orbifold_datum<Rat>(2);
  auto c = comul_from_form(A.mu, A.unit, A.counit);
  CHECK(c == A.comul);
}

TEST_CASE("center of S3 group algebra has dimension 3") {
  auto A = group_algebra<Rat>(GroupTable::symmetric3(), Rat(6));
  CHECK(check_axioms(A).all_delta_frobenius());
  auto c = center(A);
  CHECK(c.basis.size() == 3);
  auto crep = check_axioms(c.algebra);
  CHECK(crep.all_delta_frobenius() == false);  // center is commutative frobenius, not delta-separable in general
  CHECK(crep.associative);
  CHECK(crep.frobenius);
  CHECK(crep.symmetric);
  // commutative multiplication
  auto mu = c.algebra.mu;
  CHECK(mu == mu.permute({1, 0, 2}));
  // center of center has the same dimension
  CHECK(center(c.algebra).basis.size() == 3);
}

TEST_CASE("commutative algebra equals its center") {
  auto A = z2_algebra(2);
  CHECK(center(A).basis.size() == 2);
}

TEST_CASE("twisted Z/2 x Z/2 algebra is a 2x2 matrix algebra") {
  auto A = twisted_z2z2();
  auto rep = check_axioms(A);
  CHECK(rep.all_delta_frobenius());
  CHECK(center(A).basis.size() == 1);
  auto bd = block_data(A);
  REQUIRE(bd.dims.size() == 1);
  CHECK(bd.dims[0] == 2);
  CHECK(bd.dim_sum == Rat(2));
}

TEST_CASE("non-cocycle twist is rejected") {
  auto g = GroupTable::cyclic(3);
  TwoCocycle<Rat> th = TwoCocycle<Rat>::trivial(3);
  th.theta.at({1, 1}) = Rat(-1);  // breaks the cocycle identity
  CHECK_THROWS_AS(twisted_group_algebra<Rat>(g, th, Rat(3)), std::invalid_argument);
  CHECK_THROWS_AS(twisted_group_algebra<Rat>(g, TwoCocycle<Rat>::trivial(3), Rat(0)),
                  std::invalid_argument);
}

TEST_CASE("direct sums and tensor products") {
  auto one = trivial_algebra<Rat>();
  auto two = direct_sum(one, one);
  CHECK(two.dim == 2);
  CHECK(check_axioms(two).all_delta_frobenius());
  CHECK(center(two).basis.size() == 2);

  auto A = endomorphism_orbifold_datum<Rat>(2);
  auto s = direct_sum(A, one);
  CHECK(check_axioms(s).all_delta_frobenius());
  CHECK(center(s).basis.size() == 2);

  auto t = tensor_product(one, A);
  CHECK(t.dim == A.dim);
  CHECK(t.mu == A.mu);
  CHECK(t.comul == A.comul);
  CHECK(check_axioms(t).all_delta_frobenius());
}

TEST_CASE("block data: group algebras and endomorphism data") {
  auto bd2 = block_data(z2_algebra(2));
  CHECK(bd2.dims == std::vector<Index>{1, 1});
  CHECK(bd2.dim_sum == Rat(2));

  auto bds3 = block_data(group_algebra<Rat>(GroupTable::symmetric3(), Rat(6)));
  std::vector<Index> d = bds3.dims;
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<Index>{1, 1, 2});
  CHECK(bds3.dim_sum == Rat(4));

  auto bde = block_data(endomorphism_orbifold_datum<Rat>(3));
  CHECK(bde.dims == std::vector<Index>{3});
  CHECK(bde.dim_sum == Rat(3));

  // idempotents recompose the unit and are orthogonal
  auto A = group_algebra<Rat>(GroupTable::symmetric3(), Rat(6));
  auto bd = block_data(A);
  RT sum({A.dim});
  for (auto& e : bd.idempotents) {
    CHECK(A.multiply(e, e) == e);
    sum = sum + e;
  }
  CHECK(sum == A.unit);
}

TEST_CASE("scaling the counit breaks only delta-separability") {
  auto A = z2_algebra(2);
  auto scaled = with_derived_comul<Rat>(A.dim, A.mu, A.unit, A.counit.scaled(Rat(3)));
  auto rep = check_axioms(scaled);
  CHECK(rep.associative);
  CHECK(rep.unital);
  CHECK(rep.coassociative);
  CHECK(rep.counital);
  CHECK(rep.frobenius);
  CHECK(rep.symmetric);
  CHECK(rep.pairing_nondegenerate);
  CHECK_FALSE(rep.delta_separable);
}

TEST_CASE("random basis changes leave all flags unchanged") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-2, 2);
  auto A = endomorphism_orbifold_datum<Rat>(2);
  for (int trial = 0; trial < 8; ++trial) {
    RT p({A.dim, A.dim});
    do {
      for (auto& v : p.data()) v = Rat(entry(rng));
    } while (matrix_rank(p) < A.dim);
    auto B = change_basis(A, p);
    auto rep = check_axioms(B);
    CHECK(rep.all_delta_frobenius());
  }
}

TEST_CASE("mu . Delta is an idempotent that splits per its contract") {
  auto A = group_algebra<Rat>(GroupTable::symmetric3(), Rat(6));
  auto mu_comul = contract(A.comul, A.mu, {{1, 0}, {2, 1}});
  LinearMap<Rat> e(mu_comul.permute({1, 0}));  // [out, in]
  REQUIRE(compose(e, e) == e);
  auto s = split_idempotent(e);
  CHECK(s.rank == 6);
  CHECK(compose(s.inj, s.surj) == e);
}

TEST_CASE("separability element exists for separable non-delta algebras") {
  auto A = z2_algebra(1);  // mu.Delta = 2 id, still separable
  CHECK(check_axioms(A).separable);
}

TEST_CASE("single-entry perturbations flip at least one axiom flag") {
  std::mt19937_64 rng(99);
  auto algebras = std::vector<Alg>{
      trivial_algebra<Rat>(), z2_algebra(2), endomorphism_orbifold_datum<Rat>(2), twisted_z2z2()};
  std::uniform_int_distribution<int> which(0, 3), delta(1, 3);
  for (auto& A : algebras) {
    auto base = check_axioms(A);
    REQUIRE(base.all_delta_frobenius());
    for (int trial = 0; trial < 50; ++trial) {
      Alg B = A;
      int slot = which(rng);
      Rat bump(delta(rng));
      auto poke = [&](RT& t) {
        std::uniform_int_distribution<Index> at(0, t.size() - 1);
        t.data()[at(rng)] += bump;
      };
      if (slot == 0) poke(B.mu);
      if (slot == 1) poke(B.unit);
      if (slot == 2) poke(B.counit);
      if (slot == 3) poke(B.comul);
      auto rep = check_axioms(B);
      bool flipped = !rep.associative || !rep.unital || !rep.coassociative || !rep.counital ||
                     !rep.frobenius || !rep.symmetric || !rep.delta_separable ||
                     !rep.pairing_nondegenerate;
      CHECK(flipped);
    }
  }
}
