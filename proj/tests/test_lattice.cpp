#include <doctest.h>

#include <random>

#include "tvo/lattice.hpp"

using namespace tvo;

namespace {

LatticeVector random_vec(std::mt19937& rng, int nu, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<long> d(lo, hi);
    LatticeVector v = LatticeVector::zero(nu);
    for (auto& c : v.coords) c = d(rng);
    return v;
}

}  // namespace

TEST_CASE("cocycle generator values") {
    int nu = 4;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    CHECK(cocycle(e(1), e(2)) == 1);
    CHECK(cocycle(e(2), e(1)) == -1);
    CHECK(cocycle(e(1), e(1)) == 1);
    CHECK(cocycle(e(1) + e(2), e(1)) == -1);
}

TEST_CASE("cocycle is well-defined mod 2 and bimultiplicative") {
    std::mt19937 rng(5);
    int nu = 4;
    for (int t = 0; t < 200; ++t) {
        LatticeVector a = random_vec(rng, nu), b = random_vec(rng, nu);
        LatticeVector g = random_vec(rng, nu), h = random_vec(rng, nu);
        LatticeVector a2 = a, b2 = b;
        for (int k = 0; k < nu; ++k) {
            a2.coords[k] += 2 * g.coords[k];
            b2.coords[k] += 2 * h.coords[k];
        }
        CHECK(cocycle(a, b) == cocycle(a2, b));
        CHECK(cocycle(a, b) == cocycle(a, b2));
        // 2-cocycle condition (associativity)
        LatticeVector c = random_vec(rng, nu);
        CHECK(cocycle(a, b) * cocycle(a + b, c) == cocycle(b, c) * cocycle(a, b + c));
    }
}

TEST_CASE("twisted group algebra product") {
    int nu = 3;
    auto e = [&](int i) { return GroupAlgebraElement::basis(coset_reduce(LatticeVector::unit(nu, i))); };

    CHECK(group_mul(e(1), e(1), nu) == GroupAlgebraElement::unit());
    GroupAlgebraElement e12 =
        GroupAlgebraElement::basis(coset_reduce(LatticeVector::unit(nu, 1) + LatticeVector::unit(nu, 2)));
    CHECK(group_mul(e(2), e(1), nu) == e12.scaled(Scalar::integer(-1)));
    CHECK(group_mul(GroupAlgebraElement::unit(), e(2), nu) == e(2));

    SUBCASE("associativity on random triples") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> pick(0, (1 << nu) - 1);
        for (int t = 0; t < 50; ++t) {
            auto u = GroupAlgebraElement::basis(pick(rng));
            auto v = GroupAlgebraElement::basis(pick(rng));
            auto w = GroupAlgebraElement::basis(pick(rng));
            CHECK(group_mul(group_mul(u, v, nu), w, nu) == group_mul(u, group_mul(v, w, nu), nu));
        }
    }

    SUBCASE("every basis element squares to a unit scalar times the identity") {
        for (Coset c = 0; c < (1u << nu); ++c) {
            auto sq = group_mul(GroupAlgebraElement::basis(c), GroupAlgebraElement::basis(c), nu);
            REQUIRE(sq.terms().size() == 1);
            auto [cs, v] = *sq.terms().begin();
            CHECK(cs == 0);
            CHECK((v == Scalar::integer(1) || v == Scalar::integer(-1)));
        }
    }
}

TEST_CASE("coset reduction") {
    int nu = 4;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    CHECK(coset_reduce(e(1) - e(2)) == 0b0011u);
    CHECK(coset_reduce(e(1) + e(1)) == 0u);
    CHECK(coset_reduce(-e(1)) == coset_reduce(e(1)));
}

TEST_CASE("mutated cocycle breaks the generator table") {
    int nu = 2;
    CocycleMutation mut;
    mut.flip = true;
    mut.i = 1;
    mut.j = 2;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    CHECK(cocycle(e(1), e(2), mut) == -1);  // unmutated value is +1
}
