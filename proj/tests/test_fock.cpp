#include <doctest.h>

#include <numeric>

#include "tvo/fock.hpp"

using namespace tvo;

TEST_CASE("basis enumeration sizes") {
    CHECK(TruncatedBasis::enumerate(1, 3).size() == 10);
    CHECK(TruncatedBasis::enumerate(1, 0).size() == 2);
    CHECK(TruncatedBasis::enumerate(2, 1).size() == 12);

    SUBCASE("independent counting route") {
        for (int nu : {1, 2, 3}) {
            for (int depth : {0, 2, 5, 7}) {
                auto counts = odd_partition_counts(nu, depth);
                long total = std::accumulate(counts.begin(), counts.end(), 0L);
                CHECK(TruncatedBasis::enumerate(nu, depth).size() == total * (1 << nu));
            }
        }
    }

    SUBCASE("deterministic degree-major order and index lookup") {
        auto b = TruncatedBasis::enumerate(2, 4);
        for (int i = 1; i < b.size(); ++i) {
            CHECK(b.at(i - 1) < b.at(i));
            CHECK(b.at(i - 1).degree() <= b.at(i).degree());
        }
        for (int i = 0; i < b.size(); ++i) CHECK(b.index_of(b.at(i)) == i);
        FockState beyond{0, {{5, 1}}};
        CHECK(b.index_of(beyond) == -1);
        CHECK(b.degree_begin(1) == 4);  // 4 cosets of degree 0 first
    }
}

TEST_CASE("heisenberg action") {
    FockVector vac = FockVector::vacuum();
    FockVector e1 = heis_act(1, -1, vac);  // epsilon_1(-1).vac

    CHECK(heis_act(1, 1, e1) == vac.scaled(Scalar::rational(Rat(1, 2))));
    CHECK(heis_act(1, 3, e1).is_zero());

    FockVector e11 = heis_act(1, -1, e1);
    CHECK(heis_act(1, 1, e11) == e1);  // multiplicity 2 times 1/2

    SUBCASE("degree shift") {
        FockVector w = heis_act(2, -3, e1);
        for (const auto& [s, c] : w.terms()) CHECK(s.degree() == 4);
        FockVector u = heis_act(2, 3, w);
        for (const auto& [s, c] : u.terms()) CHECK(s.degree() == 1);
    }

    SUBCASE("creation operators commute") {
        FockVector a = heis_act(1, -3, heis_act(2, -1, vac));
        FockVector b = heis_act(2, -1, heis_act(1, -3, vac));
        CHECK(a == b);
    }
}

TEST_CASE("heisenberg bracket on a truncated basis") {
    auto b = TruncatedBasis::enumerate(2, 4);
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            for (int m : {-3, -1, 1, 3}) {
                for (int n : {-3, -1, 1, 3}) {
                    for (int s = 0; s < b.size(); ++s) {
                        FockVector v = FockVector::basis(b.at(s));
                        FockVector lhs = heis_act(i, m, heis_act(j, n, v)) -
                                         heis_act(j, n, heis_act(i, m, v));
                        FockVector rhs;
                        if (i == j && m + n == 0)
                            rhs = v.scaled(Scalar::rational(Rat(m, 2)));
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("group translation action") {
    int nu = 3;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    FockVector vac = FockVector::vacuum();

    FockVector r1 = group_act(e(1) - e(2), vac);
    CHECK(r1 == FockVector::basis(FockState{coset_reduce(e(1) + e(2)), {}}));

    FockVector w = FockVector::basis(FockState{coset_reduce(e(1)), {}});
    FockVector r2 = group_act(e(2), w);
    CHECK(r2 == FockVector::basis(FockState{coset_reduce(e(1) + e(2)), {}}).scaled(Scalar::integer(-1)));

    CHECK(group_act(LatticeVector::zero(nu), w) == w);

    SUBCASE("composition rule") {
        auto b = TruncatedBasis::enumerate(nu, 2);
        std::vector<LatticeVector> samples{e(1), e(2) - e(3), e(1) + e(2) + e(3), -e(2)};
        for (const auto& al : samples) {
            for (const auto& be : samples) {
                for (int s = 0; s < b.size(); ++s) {
                    FockVector v = FockVector::basis(b.at(s));
                    FockVector lhs = group_act(al, group_act(be, v));
                    FockVector rhs = group_act(al + be, v);
                    if (cocycle(al, be) < 0) rhs = rhs.scaled(Scalar::integer(-1));
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}
