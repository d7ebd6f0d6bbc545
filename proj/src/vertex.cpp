#include "tvo/vertex.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tvo {

namespace {

using Series = std::map<int, FockVector>;

struct AnnihilateMode {
    int m;
    int colour;
    long alpha_c;
    int mult;
};

void annihilate_rec(const std::vector<AnnihilateMode>& modes, const std::vector<Scalar>& neg_pows,
                    size_t idx, int dz, const Scalar& coef, const FockState& cur, int pow_lo,
                    Series& out) {
    if (idx == modes.size()) {
        out[dz].add(cur, coef);
        return;
    }
    annihilate_rec(modes, neg_pows, idx + 1, dz, coef, cur, pow_lo, out);
    const auto& mi = modes[idx];
    // choosing the generator k times contributes C(mult, k) (-alpha_c scale^{-m})^k
    Scalar base = Scalar::integer(-mi.alpha_c) * neg_pows[idx];
    Scalar fac = Scalar::integer(1);
    FockState stripped = cur;
    for (int k = 1; k <= mi.mult; ++k) {
        if (dz - mi.m * k < pow_lo) break;
        fac = fac * base;
        auto it = std::find(stripped.parts.begin(), stripped.parts.end(),
                            std::make_pair(mi.m, mi.colour));
        stripped.parts.erase(it);
        Scalar ck = coef * fac * binom(mi.mult, k);
        annihilate_rec(modes, neg_pows, idx + 1, dz - mi.m * k, ck, stripped, pow_lo, out);
    }
}

struct CreateMode {
    int m;
    int colour;
    Scalar t;  // (2 alpha_c / m) scale^m
};

void create_rec(const std::vector<CreateMode>& modes, size_t idx, int dz, const Scalar& coef,
                const FockState& cur, int pow_hi, Series& out) {
    if (idx == modes.size()) {
        out[dz].add(cur, coef);
        return;
    }
    const auto& mi = modes[idx];
    Scalar tk = coef;
    FockState grown = cur;
    for (int k = 0;; ++k) {
        if (dz + mi.m * k > pow_hi) break;
        if (k > 0) {
            tk = tk * mi.t / Scalar::integer(k);
            grown.insert_part(mi.m, mi.colour);
        }
        create_rec(modes, idx + 1, dz + mi.m * k, tk, grown, pow_hi, out);
    }
}

void exp_on_state(ExpSign sign, const LatticeVector& alpha, const Scalar& scale,
                  const FockState& s, const Scalar& coef, int pow_lo, int pow_hi, Series& out) {
    if (sign == ExpSign::annihilate) {
        std::vector<AnnihilateMode> modes;
        std::vector<Scalar> neg_pows;
        for (size_t k = 0; k < s.parts.size(); ++k) {
            auto [m, c] = s.parts[k];
            if (k > 0 && s.parts[k] == s.parts[k - 1]) continue;
            long ac = alpha.coords.at(c - 1);
            if (ac == 0) continue;
            int mult = static_cast<int>(
                std::count(s.parts.begin(), s.parts.end(), std::make_pair(m, c)));
            modes.push_back({m, c, ac, mult});
            neg_pows.push_back(scale.pow(-m));
        }
        Series local;
        annihilate_rec(modes, neg_pows, 0, 0, Scalar::integer(1), s, pow_lo, local);
        for (auto& [dz, vec] : local) {
            if (dz > pow_hi) continue;
            out[dz] += vec.scaled(coef);
        }
    } else {
        std::vector<CreateMode> modes;
        for (int m = 1; m <= pow_hi; m += 2) {
            for (int c = 1; c <= alpha.nu(); ++c) {
                long ac = alpha.coords[c - 1];
                if (ac == 0) continue;
                Rat q(2 * ac, m);
                q.canonicalize();
                modes.push_back({m, c, Scalar::rational(q) * scale.pow(m)});
            }
        }
        Series local;
        create_rec(modes, 0, 0, Scalar::integer(1), s, pow_hi, local);
        for (auto& [dz, vec] : local) out[dz] += vec.scaled(coef);
    }
}

Series apply_exp_stage(ExpSign sign, const LatticeVector& alpha, const Scalar& scale,
                       const Series& in, int pow_hi_total) {
    Series out;
    for (const auto& [zp, vec] : in) {
        for (const auto& [s, c] : vec.terms()) {
            Series sub;
            if (sign == ExpSign::annihilate) {
                exp_on_state(sign, alpha, scale, s, c, -s.degree(), 0, sub);
            } else {
                exp_on_state(sign, alpha, scale, s, c, 0, pow_hi_total - zp, sub);
            }
            for (auto& [dz, w] : sub) out[zp + dz] += w;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

}  // namespace

std::map<int, FockVector> exp_series(ExpSign sign, const LatticeVector& alpha,
                                     const Scalar& scale, const FockVector& v, int pow_lo,
                                     int pow_hi) {
    Series out;
    for (const auto& [s, c] : v.terms())
        exp_on_state(sign, alpha, scale, s, c, pow_lo, pow_hi, out);
    for (auto it = out.begin(); it != out.end();) {
        bool drop = it->first < pow_lo || it->first > pow_hi || it->second.is_zero();
        it = drop ? out.erase(it) : std::next(it);
    }
    return out;
}

FockVector apply_exp_component(ExpSign sign, const LatticeVector& alpha, const Scalar& scale,
                               int zpow, const FockVector& v) {
    auto ser = exp_series(sign, alpha, scale, v, zpow, zpow);
    auto it = ser.find(zpow);
    return it == ser.end() ? FockVector() : it->second;
}

std::map<int, FockVector> vertex_series(int nu, const VertexSpec& spec, const FockState& s,
                                        int pow_lo, int pow_hi, const CocycleMutation& mut) {
    if (spec.a.is_zero()) throw ZeroScaleError();
    const Scalar one = Scalar::integer(1);
    Series out;

    if (spec.i == spec.j) {
        if (spec.a == one) {
            // bare current: mode n component is 4 eps_i(n) at z-power -n, n odd
            for (int zp = pow_lo; zp <= pow_hi; ++zp) {
                int n = -zp;
                if (n % 2 == 0) continue;
                FockVector w = heis_act(spec.i, n, FockVector::basis(s)).scaled(Scalar::integer(4));
                if (!w.is_zero()) out[zp] = std::move(w);
            }
            return out;
        }
        if (spec.a == Scalar::integer(-1)) return out;  // zero operator
    }

    LatticeVector ei = LatticeVector::unit(nu, spec.i);
    LatticeVector ej = LatticeVector::unit(nu, spec.j);

    Series ser{{0, FockVector::basis(s)}};
    ser = apply_exp_stage(ExpSign::annihilate, -ej, spec.a, ser, pow_hi);
    ser = apply_exp_stage(ExpSign::annihilate, ei, one, ser, pow_hi);
    ser = apply_exp_stage(ExpSign::create, -ej, spec.a, ser, pow_hi);
    ser = apply_exp_stage(ExpSign::create, ei, one, ser, pow_hi);

    if (spec.i == spec.j) {
        Scalar pref = (one + spec.a) / (one - spec.a);
        auto it = ser.find(0);
        if (it == ser.end()) {
            ser[0] = FockVector::basis(s).scaled(-one);
        } else {
            it->second = it->second - FockVector::basis(s);
        }
        for (auto& [zp, vec] : ser) {
            if (zp < pow_lo || zp > pow_hi) continue;
            FockVector w = vec.scaled(pref);
            if (!w.is_zero()) out[zp] = std::move(w);
        }
        return out;
    }

    int pref = cocycle(ei, ej, mut);
    LatticeVector shift = ei - ej;
    for (auto& [zp, vec] : ser) {
        if (zp < pow_lo || zp > pow_hi) continue;
        FockVector w = group_act(shift, vec, mut);
        if (pref < 0) w = w.scaled(Scalar::integer(-1));
        if (!w.is_zero()) out[zp] = std::move(w);
    }
    return out;
}

FockVector apply_vertex_mode(int nu, const VertexSpec& spec, int n, const FockVector& v,
                             const CocycleMutation& mut) {
    FockVector out;
    for (const auto& [s, c] : v.terms()) {
        auto ser = vertex_series(nu, spec, s, -n, -n, mut);
        auto it = ser.find(-n);
        if (it != ser.end()) out += it->second.scaled(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// sparse columns

SparseVec to_sparse(const FockVector& v, const TruncatedBasis& basis) {
    SparseVec out;
    out.reserve(v.terms().size());
    for (const auto& [s, c] : v.terms()) {
        int idx = basis.index_of(s);
        if (idx < 0) throw InsufficientHeadroomError();
        out.emplace_back(idx, c);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

FockVector to_fock(const SparseVec& v, const TruncatedBasis& basis) {
    FockVector out;
    for (const auto& [idx, c] : v) out.add(basis.at(idx), c);
    return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
            out.push_back(a[ia++]);
        } else if (ia == a.size() || b[ib].first < a[ia].first) {
            out.push_back(b[ib++]);
        } else {
            Scalar s = a[ia].second + b[ib].second;
            if (!s.is_zero()) out.emplace_back(a[ia].first, std::move(s));
            ++ia;
            ++ib;
        }
    }
    return out;
}

SparseVec sparse_scale(const SparseVec& a, const Scalar& s) {
    if (s.is_zero()) return {};
    SparseVec out;
    out.reserve(a.size());
    for (const auto& [idx, c] : a) out.emplace_back(idx, c * s);
    return out;
}

const SparseVec& ModeOp::column(int idx) const {
    if (basis->at(idx).degree() > col_cap) throw InsufficientHeadroomError();
    return cols[idx];
}

SparseVec ModeOp::apply(const SparseVec& v) const {
    std::map<int, Scalar> acc;
    for (const auto& [idx, c] : v) {
        if (basis->at(idx).degree() > col_cap) throw InsufficientHeadroomError();
        for (const auto& [ridx, a] : cols[idx]) {
            auto it = acc.find(ridx);
            if (it == acc.end()) {
                acc.emplace(ridx, a * c);
            } else {
                it->second += a * c;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    SparseVec out;
    out.reserve(acc.size());
    for (auto& [idx, c] : acc) out.emplace_back(idx, std::move(c));
    return out;
}

ModeFamily build_modes(const TruncatedBasis& basis, const VertexSpec& spec, int mode_lo,
                       int mode_hi, int col_cap, const CocycleMutation& mut) {
    assert(mode_lo <= mode_hi);
    if (col_cap + std::max(std::abs(mode_lo), std::abs(mode_hi)) > basis.depth())
        throw InsufficientHeadroomError();
    ModeFamily fam;
    for (int n = mode_lo; n <= mode_hi; ++n) {
        ModeOp op;
        op.basis = &basis;
        op.mode = n;
        op.col_cap = col_cap;
        op.cols.resize(basis.size());
        fam.emplace(n, std::move(op));
    }
    for (int col = 0; col < basis.size(); ++col) {
        const FockState& s = basis.at(col);
        if (s.degree() > col_cap) break;  // degree-major order
        auto ser = vertex_series(basis.nu(), spec, s, -mode_hi, -mode_lo, mut);
        for (auto& [zp, vec] : ser) fam.at(-zp).cols[col] = to_sparse(vec, basis);
    }
    return fam;
}

const ModeOp& VertexContext::mode(const VertexSpec& spec, int n, int mode_lo, int mode_hi,
                                  int col_cap) {
    Key key{spec.i, spec.j, spec.a.str(), mode_lo, mode_hi, col_cap};
    auto it = fams_.find(key);
    if (it == fams_.end())
        it = fams_.emplace(key, build_modes(*basis_, spec, mode_lo, mode_hi, col_cap, mut_)).first;
    return it->second.at(n);
}

// ---------------------------------------------------------------------------
// six-term expected commutator

SparseVec expected_commutator_apply(VertexContext& ctx, int i, int j, const Scalar& a, int m,
                                    int k, int l, const Scalar& b, int n, int col, int D, int W) {
    const Scalar one = Scalar::integer(1);
    const Scalar ab = a * b;
    const Scalar abi = a / b;
    const int p = m + n;
    const int lo2 = -2 * W, hi2 = 2 * W;
    SparseVec out;
    SparseVec unit{{col, one}};

    auto add_vertex_term = [&](int vi, int vj, const Scalar& scale, const Scalar& coef) {
        if (coef.is_zero()) return;
        const ModeOp& x = ctx.mode({vi, vj, scale}, p, lo2, hi2, D);
        out = sparse_add(out, sparse_scale(x.apply(unit), coef));
    };
    auto add_identity_term = [&](const Scalar& coef) {
        if (p != 0 || coef.is_zero()) return;
        out = sparse_add(out, sparse_scale(unit, coef));
    };

    const Scalar two = Scalar::integer(2);
    const Scalar four = Scalar::integer(4);
    const bool ab_is_one = (ab == one);
    const bool a_eq_b = (a == b);
    const Scalar s_ab = ab_is_one ? Scalar() : (one + ab) / (one - ab);
    const Scalar s_abi = a_eq_b ? Scalar() : (one + abi) / (one - abi);
    const Scalar sgn_n = Scalar::integer(n % 2 == 0 ? 1 : -1);

    if (j == k) {
        Scalar c = two * a.pow(n);
        add_vertex_term(i, l, ab, c);
        if (i == l && !ab_is_one) add_identity_term(c * s_ab);
    }
    if (i == l) {
        Scalar c = -two * b.pow(m);
        add_vertex_term(k, j, ab, c);
        if (j == k && !ab_is_one) add_identity_term(c * s_ab);
    }
    if (i == k) {
        Scalar c = two * sgn_n;
        add_vertex_term(l, j, abi, c * b.pow(-p));
        if (j == l && !a_eq_b) add_identity_term(c * s_abi);
    }
    if (j == l) {
        Scalar c = -two * sgn_n * a.pow(n) * b.pow(-n);
        add_vertex_term(i, k, abi, c);
        if (i == k && !a_eq_b) add_identity_term(c * s_abi);
    }
    if (i == l && j == k && ab_is_one)
        add_identity_term(four * Scalar::integer(-n) * a.pow(n));
    if (i == k && j == l && a_eq_b)
        add_identity_term(-four * Scalar::integer(-n) * sgn_n);
    return out;
}

namespace {

std::string state_str(const TruncatedBasis& basis, int idx) {
    const FockState& s = basis.at(idx);
    std::ostringstream os;
    os << "coset=";
    for (int k = 0; k < basis.nu(); ++k) os << ((s.coset >> k) & 1);
    for (auto& [m, c] : s.parts) os << " eps_" << c << "(-" << m << ")";
    return os.str();
}

std::string sparse_str(const TruncatedBasis& basis, const SparseVec& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    for (size_t t = 0; t < v.size() && t < 3; ++t) {
        if (t) os << " + ";
        os << "(" << v[t].second.str() << ")*[" << state_str(basis, v[t].first) << "]";
    }
    if (v.size() > 3) os << " + ...";
    return os.str();
}

}  // namespace

CheckReport verify_commutator_relations(VertexContext& ctx, int nu, const Scalar& a,
                                        const Scalar& b, int D, int W) {
    CheckReport rep;
    const TruncatedBasis& basis = ctx.basis();
    int cmp_end = basis.degree_begin(D + 1);
    for (int i = 1; i <= nu; ++i) {
        for (int j = 1; j <= nu; ++j) {
            for (int k = 1; k <= nu; ++k) {
                for (int l = 1; l <= nu; ++l) {
                    for (int m = -W; m <= W; ++m) {
                        for (int n = -W; n <= W; ++n) {
                            const ModeOp& u = ctx.mode({i, j, a}, m, -W, W, D + W);
                            const ModeOp& v = ctx.mode({k, l, b}, n, -W, W, D + W);
                            for (int col = 0; col < cmp_end; ++col) {
                                SparseVec lhs = sparse_add(
                                    u.apply(v.column(col)),
                                    sparse_scale(v.apply(u.column(col)), Scalar::integer(-1)));
                                SparseVec rhs = expected_commutator_apply(ctx, i, j, a, m, k, l,
                                                                          b, n, col, D, W);
                                ++rep.checks;
                                if (lhs != rhs) {
                                    std::ostringstream os;
                                    os << "commutator mismatch at i=" << i << " j=" << j
                                       << " a=" << a.str() << " m=" << m << " k=" << k
                                       << " l=" << l << " b=" << b.str() << " n=" << n
                                       << " column [" << state_str(basis, col)
                                       << "]: lhs=" << sparse_str(basis, lhs)
                                       << " rhs=" << sparse_str(basis, rhs);
                                    rep.record_failure(os.str());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return rep;
}

CheckReport verify_mode_transpose_symmetry(VertexContext& ctx, int nu, const Scalar& a, int D,
                                           int W) {
    CheckReport rep;
    const TruncatedBasis& basis = ctx.basis();
    int cmp_end = basis.degree_begin(D + 1);
    Scalar ai = a.inv();
    for (int i = 1; i <= nu; ++i) {
        for (int j = 1; j <= nu; ++j) {
            for (int n = -W; n <= W; ++n) {
                const ModeOp& xji = ctx.mode({j, i, ai}, n, -W, W, D);
                const ModeOp& xij = ctx.mode({i, j, a}, n, -W, W, D);
                Scalar coef = -Scalar::integer(n % 2 == 0 ? 1 : -1) * a.pow(n);
                for (int col = 0; col < cmp_end; ++col) {
                    ++rep.checks;
                    if (xji.column(col) != sparse_scale(xij.column(col), coef)) {
                        std::ostringstream os;
                        os << "transpose symmetry fails at i=" << i << " j=" << j << " n=" << n
                           << " column [" << state_str(basis, col) << "]";
                        rep.record_failure(os.str());
                    }
                }
            }
        }
    }
    return rep;
}

CheckReport verify_translation_commutation(VertexContext& ctx, int nu, const Scalar& a, int D,
                                           int W) {
    CheckReport rep;
    const TruncatedBasis& basis = ctx.basis();
    int cmp_end = basis.degree_begin(D + 1);
    for (int i = 1; i <= nu; ++i) {
        for (int j = 1; j <= nu; ++j) {
            for (int n = -W; n <= W; ++n) {
                const ModeOp& x = ctx.mode({i, j, a}, n, -W, W, D);
                for (Coset cs = 0; cs < (1u << nu); ++cs) {
                    LatticeVector alpha = coset_rep(cs, nu);
                    long pair = alpha.coords[i - 1] - alpha.coords[j - 1];
                    Scalar coef = Scalar::integer(((pair % 2) + 2) % 2 == 0 ? 0 : -2);
                    for (int col = 0; col < cmp_end; ++col) {
                        FockVector xcol = to_fock(x.column(col), basis);
                        FockVector txcol = group_act(alpha, xcol, ctx.mutation());
                        FockVector lhs =
                            apply_vertex_mode(nu, {i, j, a}, n,
                                              group_act(alpha, FockVector::basis(basis.at(col)),
                                                        ctx.mutation()),
                                              ctx.mutation()) -
                            txcol;
                        ++rep.checks;
                        if (!(lhs == txcol.scaled(coef))) {
                            std::ostringstream os;
                            os << "translation commutation fails at i=" << i << " j=" << j
                               << " n=" << n << " alpha coset=" << cs << " column ["
                               << state_str(basis, col) << "]";
                            rep.record_failure(os.str());
                        }
                    }
                }
            }
        }
    }
    return rep;
}

CheckReport verify_diagonal_limit(int nu, int D, int W) {
    CheckReport rep;
    auto cfg = FieldConfig::make(4, {"a"});
    Scalar ap = Scalar::param(cfg, "a");
    TruncatedBasis basis = TruncatedBasis::enumerate(nu, D);
    for (int i = 1; i <= nu; ++i) {
        for (int col = 0; col < basis.size(); ++col) {
            auto ser_a = vertex_series(nu, {i, i, ap}, basis.at(col), -W, W);
            auto ser_1 = vertex_series(nu, {i, i, Scalar::integer(1)}, basis.at(col), -W, W);
            for (int zp = -W; zp <= W; ++zp) {
                FockVector va = ser_a.count(zp) ? ser_a.at(zp) : FockVector();
                FockVector v1 = ser_1.count(zp) ? ser_1.at(zp) : FockVector();
                // union of supports, compared entry by entry under the limit
                FockVector probe = va + v1;
                for (const auto& [s, coef] : probe.terms()) {
                    (void)coef;
                    ++rep.checks;
                    Scalar ea, e1;
                    if (auto it = va.terms().find(s); it != va.terms().end()) ea = it->second;
                    if (auto it = v1.terms().find(s); it != v1.terms().end()) e1 = it->second;
                    try {
                        if (limit_at(ea, "a", Cyclo::integer(1)) != e1) {
                            rep.record_failure("diagonal limit mismatch at colour " +
                                               std::to_string(i) + ", mode " +
                                               std::to_string(-zp));
                        }
                    } catch (const GenuinePoleError&) {
                        rep.record_failure("diagonal entry has a pole at scale 1, colour " +
                                           std::to_string(i) + ", mode " + std::to_string(-zp));
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace tvo
