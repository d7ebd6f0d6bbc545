#include <doctest.h>

#include "tvo/vertex.hpp"

using namespace tvo;

namespace {

FockVector vac() { return FockVector::vacuum(); }

// truncated series in one variable t with Scalar coefficients, c[k] = coeff of t^k
using TSeries = std::vector<Scalar>;

TSeries ts_mul(const TSeries& a, const TSeries& b) {
    TSeries r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

TSeries ts_inv(const TSeries& a) {
    // reciprocal of a series with a[0] = 1
    TSeries r(a.size());
    r[0] = Scalar::integer(1);
    for (size_t k = 1; k < a.size(); ++k) {
        Scalar s;
        for (size_t j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r[k] = -s;
    }
    return r;
}

// ((1-t)/(1+t))^e up to t^order
TSeries ratio_power(long e, int order) {
    TSeries base(order + 1);
    base[0] = Scalar::integer(1);
    for (int k = 1; k <= order; ++k) base[k] = Scalar::integer(k % 2 ? -2 : 2);
    if (e < 0) {
        base = ts_inv(base);
        e = -e;
    }
    TSeries r(order + 1);
    r[0] = Scalar::integer(1);
    for (long q = 0; q < e; ++q) r = ts_mul(r, base);
    return r;
}

}  // namespace

TEST_CASE("exponential generator components") {
    int nu = 2;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    Scalar one = Scalar::integer(1);

    CHECK(apply_exp_component(ExpSign::create, e(1), one, 1, vac()) ==
          heis_act(1, -1, vac()).scaled(Scalar::integer(2)));

    auto cfg = FieldConfig::make(4, {"a"});
    Scalar a = Scalar::param(cfg, "a");
    CHECK(apply_exp_component(ExpSign::create, -e(2), a, 1, vac()) ==
          heis_act(2, -1, vac()).scaled(Scalar::integer(-2) * a));

    FockVector w = heis_act(1, -3, heis_act(2, -1, vac()));
    CHECK(apply_exp_component(ExpSign::create, e(1) - e(2), a, 0, w) == w);
    CHECK(apply_exp_component(ExpSign::annihilate, e(1) + e(2), a, 0, w) == w);

    SUBCASE("annihilation component on a single generator") {
        FockVector u = heis_act(1, -1, vac());
        CHECK(apply_exp_component(ExpSign::annihilate, e(1), one, -1, u) ==
              vac().scaled(Scalar::integer(-1)));
    }
}

TEST_CASE("exponential exchange relation on windows") {
    // E_+(alpha, z) E_-(beta, w) = E_-(beta, w) E_+(alpha, z) * ((1-w/z)/(1+w/z))^{(alpha,beta)}
    int nu = 2, K = 4;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    Scalar one = Scalar::integer(1);
    std::vector<std::pair<LatticeVector, LatticeVector>> cases{
        {e(1), e(1)},          // pairing 1
        {e(1), -e(1)},         // pairing -1
        {e(1) + e(2), e(1)},   // pairing 1
        {e(1) - e(2), e(1) + e(2)}};  // pairing 0
    std::vector<FockVector> samples{vac(), heis_act(1, -1, vac()),
                                    heis_act(2, -3, heis_act(1, -1, vac()))};
    for (const auto& [alpha, beta] : cases) {
        long pair = pairing(alpha, beta);
        TSeries f = ratio_power(pair, 2 * K);
        for (const auto& v : samples) {
            // LHS(zp, wp) = E_+[zp] (E_-[wp] v)
            auto em = exp_series(ExpSign::create, beta, one, v, 0, K);
            for (int wp = 0; wp <= K; ++wp) {
                FockVector emv = em.count(wp) ? em.at(wp) : FockVector();
                auto lhs_com = exp_series(ExpSign::annihilate, alpha, one, emv, -K, 0);
                for (int zp = -K; zp <= 0; ++zp) {
                    FockVector lhs = lhs_com.count(zp) ? lhs_com.at(zp) : FockVector();
                    // RHS(zp, wp) = sum_k f_k E_-[wp-k] (E_+[zp+k] v)
                    FockVector rhs;
                    for (int k = 0; k <= std::min(wp, -zp); ++k) {
                        if (f[k].is_zero()) continue;
                        FockVector inner =
                            apply_exp_component(ExpSign::annihilate, alpha, one, zp + k, v);
                        rhs += apply_exp_component(ExpSign::create, beta, one, wp - k, inner)
                                   .scaled(f[k]);
                    }
                    CHECK(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("heisenberg current against exponential components") {
    // [alpha(h), E_sign[wp]] = (alpha,beta) E_sign[wp - h] on the matching side
    int nu = 2, K = 3;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    Scalar one = Scalar::integer(1);
    LatticeVector alpha = e(1), beta = e(1) - e(2);
    long pr = pairing(alpha, beta);
    std::vector<FockVector> samples{vac(), heis_act(1, -1, vac())};
    auto heis_alpha = [&](int h, const FockVector& v) {
        FockVector out;
        for (int c = 1; c <= nu; ++c)
            if (alpha.coords[c - 1] != 0)
                out += heis_act(c, h, v).scaled(Scalar::integer(alpha.coords[c - 1]));
        return out;
    };
    for (const auto& v : samples) {
        for (int h = -3; h <= 3; h += 2) {
            // E_+ side: nonzero only for h < 0
            for (int wp = -K; wp <= 0; ++wp) {
                FockVector ev = apply_exp_component(ExpSign::annihilate, beta, one, wp, v);
                FockVector lhs = heis_alpha(h, ev) -
                                 apply_exp_component(ExpSign::annihilate, beta, one, wp,
                                                     heis_alpha(h, v));
                FockVector rhs;
                if (h < 0 && wp - h <= 0)
                    rhs = apply_exp_component(ExpSign::annihilate, beta, one, wp - h, v)
                              .scaled(Scalar::integer(pr));
                CHECK(lhs == rhs);
            }
            // E_- side: nonzero only for h > 0
            for (int wp = 0; wp <= K; ++wp) {
                FockVector ev = apply_exp_component(ExpSign::create, beta, one, wp, v);
                FockVector lhs =
                    heis_alpha(h, ev) -
                    apply_exp_component(ExpSign::create, beta, one, wp, heis_alpha(h, v));
                FockVector rhs;
                if (h > 0 && wp - h >= 0)
                    rhs = apply_exp_component(ExpSign::create, beta, one, wp - h, v)
                              .scaled(Scalar::integer(pr));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("vertex mode columns, frozen examples") {
    int nu = 3;
    auto e = [&](int i) { return LatticeVector::unit(nu, i); };
    Scalar one = Scalar::integer(1);
    auto cfg = FieldConfig::make(4, {"a"});
    Scalar a = Scalar::param(cfg, "a");

    SUBCASE("diagonal scale-1 mode -1 on vacuum") {
        FockVector got = apply_vertex_mode(nu, {1, 1, one}, -1, vac());
        CHECK(got == heis_act(1, -1, vac()).scaled(Scalar::integer(4)));
    }

    SUBCASE("off-diagonal mode 0 on vacuum") {
        FockVector got = apply_vertex_mode(nu, {1, 2, a}, 0, vac());
        CHECK(got == FockVector::basis(FockState{coset_reduce(e(1) + e(2)), {}}));
    }

    SUBCASE("off-diagonal mode -1 on vacuum") {
        FockVector got = apply_vertex_mode(nu, {1, 2, a}, -1, vac());
        Coset c12 = coset_reduce(e(1) + e(2));
        FockVector want =
            heis_act(1, -1, FockVector::basis(FockState{c12, {}})).scaled(Scalar::integer(2)) +
            heis_act(2, -1, FockVector::basis(FockState{c12, {}}))
                .scaled(Scalar::integer(-2) * a);
        CHECK(got == want);
    }

    SUBCASE("diagonal scale -1 is the zero operator") {
        CHECK(apply_vertex_mode(nu, {2, 2, Scalar::integer(-1)}, -1, vac()).is_zero());
    }

    SUBCASE("zero scale is rejected") {
        CHECK_THROWS_AS(apply_vertex_mode(nu, {1, 2, Scalar()}, 0, vac()), ZeroScaleError);
    }

    SUBCASE("diagonal scale-a mode 0 kills the vacuum") {
        CHECK(apply_vertex_mode(nu, {1, 1, a}, 0, vac()).is_zero());
    }

    SUBCASE("degree homogeneity") {
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
        for (int col = 0; col < basis.size(); ++col) {
            const FockState& s = basis.at(col);
            for (int n : {-2, -1, 1}) {
                FockVector im = apply_vertex_mode(2, {1, 2, a}, n, FockVector::basis(s));
                for (const auto& [t, cv] : im.terms()) {
                    (void)cv;
                    CHECK(t.degree() == s.degree() - n);
                }
            }
        }
    }
}

TEST_CASE("commutator of bare current modes") {
    TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
    VertexContext ctx(basis);
    Scalar one = Scalar::integer(1);
    const ModeOp& up = ctx.mode({1, 1, one}, 1, -1, 1, 3);
    const ModeOp& dn = ctx.mode({1, 1, one}, -1, -1, 1, 3);
    int cmp_end = basis.degree_begin(3);
    for (int col = 0; col < cmp_end; ++col) {
        SparseVec lhs = sparse_add(up.apply(dn.column(col)),
                                   sparse_scale(dn.apply(up.column(col)), Scalar::integer(-1)));
        SparseVec want{{col, Scalar::integer(8)}};
        CHECK(lhs == want);
    }
}

TEST_CASE("six-term expected commutator, frozen cases") {
    SUBCASE("central case equals 8 times the identity") {
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
        VertexContext ctx(basis);
        Scalar one = Scalar::integer(1);
        int D = 2, W = 1;
        int cmp_end = basis.degree_begin(D + 1);
        for (int col = 0; col < cmp_end; ++col) {
            SparseVec rhs = expected_commutator_apply(ctx, 1, 1, one, 1, 1, 1, one, -1, col, D, W);
            SparseVec want{{col, Scalar::integer(8)}};
            CHECK(rhs == want);
        }
    }

    SUBCASE("distinct colours give the zero operator on both routes") {
        TruncatedBasis basis = TruncatedBasis::enumerate(4, 3);
        VertexContext ctx(basis);
        auto cfg = FieldConfig::make(4, {"a", "b"});
        Scalar a = Scalar::param(cfg, "a"), b = Scalar::param(cfg, "b");
        int D = 1, W = 1;
        const ModeOp& u = ctx.mode({1, 2, a}, 0, -W, W, D + W);
        const ModeOp& v = ctx.mode({3, 4, b}, 0, -W, W, D + W);
        int cmp_end = basis.degree_begin(D + 1);
        for (int col = 0; col < cmp_end; ++col) {
            SparseVec lhs = sparse_add(u.apply(v.column(col)),
                                       sparse_scale(v.apply(u.column(col)), Scalar::integer(-1)));
            CHECK(lhs.empty());
            CHECK(expected_commutator_apply(ctx, 1, 2, a, 0, 3, 4, b, 0, col, D, W).empty());
        }
    }

    SUBCASE("chain case reduces to a single vertex term") {
        TruncatedBasis basis = TruncatedBasis::enumerate(3, 3);
        VertexContext ctx(basis);
        auto cfg = FieldConfig::make(4, {"a", "b"});
        Scalar a = Scalar::param(cfg, "a"), b = Scalar::param(cfg, "b");
        int D = 1, W = 1;
        const ModeOp& x13 = ctx.mode({1, 3, a * b}, 0, -2 * W, 2 * W, D);
        int cmp_end = basis.degree_begin(D + 1);
        for (int col = 0; col < cmp_end; ++col) {
            SparseVec rhs = expected_commutator_apply(ctx, 1, 2, a, 0, 2, 3, b, 0, col, D, W);
            CHECK(rhs == sparse_scale(x13.column(col), Scalar::integer(2)));
        }
    }
}

TEST_CASE("commutator relations, small exhaustive windows") {
    Scalar one = Scalar::integer(1);

    SUBCASE("numeric scales") {
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 5);
        VertexContext ctx(basis);
        CheckReport rep = verify_commutator_relations(ctx, 2, one, one, 3, 1);
        INFO(rep.first_failure);
        CHECK(rep.pass);
        CHECK(rep.checks > 0);
    }

    SUBCASE("formal parameter scales") {
        auto cfg = FieldConfig::make(4, {"a", "b"});
        Scalar a = Scalar::param(cfg, "a"), b = Scalar::param(cfg, "b");
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
        VertexContext ctx(basis);
        CheckReport rep = verify_commutator_relations(ctx, 2, a, b, 2, 1);
        INFO(rep.first_failure);
        CHECK(rep.pass);
    }

    SUBCASE("fourth-root scales exercise the equal-scale branch") {
        Scalar i4 = Scalar(Cyclo::zeta(4));
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
        VertexContext ctx(basis);
        CheckReport rep = verify_commutator_relations(ctx, 2, i4, i4, 2, 1);
        INFO(rep.first_failure);
        CHECK(rep.pass);
    }

    SUBCASE("cocycle mutation is detected") {
        TruncatedBasis basis = TruncatedBasis::enumerate(2, 5);
        CocycleMutation mut;
        mut.flip = true;
        VertexContext ctx(basis, mut);
        CheckReport rep = verify_commutator_relations(ctx, 2, one, one, 3, 1);
        CHECK_FALSE(rep.pass);
        CHECK(!rep.first_failure.empty());
    }
}

TEST_CASE("mode transpose symmetry") {
    auto cfg = FieldConfig::make(4, {"a"});
    Scalar a = Scalar::param(cfg, "a");
    TruncatedBasis basis = TruncatedBasis::enumerate(2, 4);
    VertexContext ctx(basis);
    CheckReport rep = verify_mode_transpose_symmetry(ctx, 2, a, 2, 2);
    INFO(rep.first_failure);
    CHECK(rep.pass);

    SUBCASE("even modes of the diagonal scale-1 operator vanish") {
        Scalar one = Scalar::integer(1);
        for (int n : {-2, 0, 2}) {
            const ModeOp& x = ctx.mode({1, 1, one}, n, -2, 2, 2);
            for (int col = 0; col < basis.degree_begin(3); ++col)
                CHECK(x.column(col).empty());
        }
    }
}

TEST_CASE("translation commutation") {
    Scalar one = Scalar::integer(1);
    TruncatedBasis basis = TruncatedBasis::enumerate(2, 3);
    VertexContext ctx(basis);
    CheckReport rep = verify_translation_commutation(ctx, 2, one, 2, 1);
    INFO(rep.first_failure);
    CHECK(rep.pass);
}

TEST_CASE("diagonal modes are regular at scale 1 with the current limit") {
    CheckReport rep = verify_diagonal_limit(2, 3, 2);
    INFO(rep.first_failure);
    CHECK(rep.pass);
    CHECK(rep.checks > 0);
}

TEST_CASE("headroom violations are detected, not silently truncated") {
    TruncatedBasis basis = TruncatedBasis::enumerate(2, 3);
    VertexContext ctx(basis);
    Scalar one = Scalar::integer(1);
    const ModeOp& x = ctx.mode({1, 2, one}, -1, -1, 1, 2);
    // a state of degree 3 lies beyond the column cap of 2
    int deep = basis.degree_begin(3);
    REQUIRE(deep < basis.size());
    SparseVec v{{deep, one}};
    CHECK_THROWS_AS(x.apply(v), InsufficientHeadroomError);
    CHECK_THROWS_AS(x.column(deep), InsufficientHeadroomError);
}
