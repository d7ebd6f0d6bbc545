#include "tvo/series.hpp"

#include <cassert>

namespace tvo {

CoeffWindow CoeffWindow::restrict_to(int lo, int hi) const {
    assert(lo >= lo_ && hi <= hi_);
    CoeffWindow out(lo, hi);
    for (int k = lo; k <= hi; ++k) out.set(k, at(k));
    return out;
}

namespace {

// window coefficients of a single factor raised to its multiplicity
CoeffWindow expand_factor(const OneSidedFactor& f, int lo, int hi) {
    CoeffWindow out(lo, hi);
    int e = f.multiplicity;
    if (f.dir == Direction::positive) {
        // coeff(k) = C(k+e-1, e-1) A^k, k >= 0
        for (int k = std::max(lo, 0); k <= hi; ++k)
            out.set(k, binom(k + e - 1, e - 1) * f.pole.pow(k));
    } else {
        // coeff(-m) = C(m-1, e-1) A^{-m}, m >= e
        for (int k = std::min(hi, -e); k >= lo; --k)
            out.set(k, binom(-k - 1, e - 1) * f.pole.pow(k));
    }
    return out;
}

}  // namespace

CoeffWindow expand_product(const std::vector<OneSidedFactor>& factors, int lo, int hi) {
    assert(!factors.empty());
    Direction dir = factors.front().dir;
    for (const auto& f : factors)
        if (f.dir != dir) throw MixedDirectionsError();

    // One-sided support keeps every convolution finite: positive factors live
    // on [0, hi], negative ones on [lo, 0].
    int wlo = dir == Direction::positive ? 0 : lo;
    int whi = dir == Direction::positive ? hi : 0;
    CoeffWindow out(lo, hi);
    if (wlo > whi) return out;

    CoeffWindow acc(wlo, whi);
    bool first = true;
    for (const auto& f : factors) {
        CoeffWindow fw = expand_factor(f, wlo, whi);
        if (first) {
            acc = fw;
            first = false;
            continue;
        }
        CoeffWindow next(wlo, whi);
        for (int i = wlo; i <= whi; ++i) {
            if (acc.at(i).is_zero()) continue;
            for (int j = wlo; j <= whi; ++j) {
                int k = i + j;
                if (k < wlo || k > whi) continue;
                if (fw.at(j).is_zero()) continue;
                next.add(k, acc.at(i) * fw.at(j));
            }
        }
        acc = next;
    }
    for (int k = std::max(lo, wlo); k <= std::min(hi, whi); ++k) out.set(k, acc.at(k));
    return out;
}

CoeffWindow delta_window(const std::vector<std::pair<Scalar, DeltaAtom>>& atoms, int lo, int hi) {
    CoeffWindow out(lo, hi);
    for (const auto& [coef, atom] : atoms) {
        for (int k = lo; k <= hi; ++k) {
            Scalar v = coef * atom.scale.pow(k);
            if (atom.kind == DeltaKind::d_delta) v = v * Scalar::integer(k);
            out.add(k, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// identity verifiers

namespace {

struct IdentityVars {
    FieldConfigPtr cfg;
    std::vector<Scalar> A;  // A[0..n]; A[0] unused for the plain-product form
    Scalar aux;             // B or x
};

IdentityVars make_vars(int n, const char* aux_name, bool with_a0) {
    std::vector<std::string> names;
    int start = with_a0 ? 0 : 1;
    for (int i = start; i <= n; ++i) names.push_back("A" + std::to_string(i));
    if (aux_name) names.emplace_back(aux_name);
    auto cfg = FieldConfig::make(4, names);
    IdentityVars v;
    v.cfg = cfg;
    v.A.resize(n + 1);
    for (int i = start; i <= n; ++i) v.A[i] = Scalar::param(cfg, "A" + std::to_string(i));
    if (aux_name) v.aux = Scalar::param(cfg, aux_name);
    return v;
}

}  // namespace

bool verify_rational_identity(RationalId id, int n, const SeriesMutation& mut) {
    assert(n >= 1);
    const Scalar one = Scalar::integer(1);
    bool x_form = id == RationalId::direct_x || id == RationalId::reflected_x;
    IdentityVars v = make_vars(n, x_form ? "x" : "B", true);
    const auto& A = v.A;

    // weight of the i-th pole: squared factor against A0, chain over j != i
    auto chain_weight = [&](int i, bool reflected) {
        Scalar w = (reflected ? A[0] / (A[i] - A[0]) : A[i] / (A[i] - A[0])).pow(2);
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            w = w * (reflected ? A[j] : A[i]) / (A[i] - A[j]);
        }
        return w;
    };
    auto front_product = [&](bool reflected) {
        Scalar p = one;
        for (int i = 1; i <= n; ++i)
            p = p * (reflected ? A[i] / (A[0] - A[i]) : A[0] / (A[0] - A[i]));
        return p;
    };

    Scalar lhs, rhs;
    switch (id) {
        case RationalId::direct_b: {
            const Scalar& B = v.aux;
            lhs = (B / (B - A[0])).pow(2);
            for (int j = 1; j <= n; ++j) lhs = lhs * B / (B - A[j]);
            for (int i = 1; i <= n; ++i) rhs += chain_weight(i, false) * B / (B - A[i]);
            Scalar sum;
            for (int l = 1; l <= n; ++l) sum += A[l] / (A[l] - A[0]);
            rhs += front_product(false) * ((B / (B - A[0])).pow(2) + sum * B / (B - A[0]));
            break;
        }
        case RationalId::reflected_b: {
            const Scalar& B = v.aux;
            lhs = (A[0] / (B - A[0])).pow(2);
            for (int j = 1; j <= n; ++j) lhs = lhs * A[j] / (B - A[j]);
            for (int i = 1; i <= n; ++i) rhs += chain_weight(i, true) * A[i] / (B - A[i]);
            Scalar sum;
            for (int l = 1; l <= n; ++l) sum += A[0] / (A[l] - A[0]);
            rhs += front_product(true) * ((A[0] / (B - A[0])).pow(2) + sum * A[0] / (B - A[0]));
            break;
        }
        case RationalId::direct_x: {
            const Scalar& x = v.aux;
            lhs = (one / (one - A[0] * x)).pow(2);
            for (int j = 1; j <= n; ++j) lhs = lhs / (one - A[j] * x);
            for (int i = 1; i <= n; ++i) rhs += chain_weight(i, false) / (one - A[i] * x);
            Scalar sum = mut.drop_bracket_one ? Scalar() : one;
            for (int l = 1; l <= n; ++l) sum += A[l] / (A[l] - A[0]);
            rhs += front_product(false) *
                   (A[0] * x / (one - A[0] * x).pow(2) + sum / (one - A[0] * x));
            break;
        }
        case RationalId::reflected_x: {
            const Scalar& x = v.aux;
            lhs = (A[0] * x / (one - A[0] * x)).pow(2);
            for (int j = 1; j <= n; ++j) lhs = lhs * A[j] * x / (one - A[j] * x);
            for (int i = 1; i <= n; ++i)
                rhs += chain_weight(i, true) * A[i] * x / (one - A[i] * x);
            Scalar sum = -one;
            for (int l = 1; l <= n; ++l) sum += A[0] / (A[l] - A[0]);
            rhs += front_product(true) *
                   (A[0] * x / (one - A[0] * x).pow(2) + sum * A[0] * x / (one - A[0] * x));
            break;
        }
    }
    return (lhs - rhs).is_zero();
}

bool verify_delta_identity(DeltaId id, int n, int K, const SeriesMutation& mut) {
    assert(n >= 1 && K >= 1);
    const Scalar one = Scalar::integer(1);
    bool with_a0 = id == DeltaId::double_pole;
    IdentityVars v = make_vars(n, nullptr, with_a0);
    const auto& A = v.A;

    std::vector<OneSidedFactor> pos, neg;
    if (with_a0) {
        pos.push_back({A[0], Direction::positive, 2});
        neg.push_back({A[0], Direction::negative, 2});
    }
    for (int i = 1; i <= n; ++i) {
        pos.push_back({A[i], Direction::positive, 1});
        neg.push_back({A[i], Direction::negative, 1});
    }
    CoeffWindow lp = expand_product(pos, -K, K);
    CoeffWindow ln = expand_product(neg, -K, K);
    Scalar sign = Scalar::integer(n % 2 == 0 ? 1 : -1);

    // Both sides are compared with the common denominator of the atom
    // weights cleared once; per-exponent coefficients then stay polynomial
    // (up to monomial factors from the A^k powers).
    Scalar D = one;
    if (with_a0)
        for (int i = 1; i <= n; ++i) D *= (A[i] - A[0]).pow(2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) D *= (A[i] - A[j]);

    std::vector<std::pair<Scalar, DeltaAtom>> atoms;
    if (id == DeltaId::simple_poles) {
        for (int i = 1; i <= n; ++i) {
            Scalar w = one;
            for (int j = 1; j <= n; ++j) {
                if (j == i) continue;
                w = w * A[i] / (A[i] - A[j]);
            }
            atoms.push_back({w * D, DeltaAtom{DeltaKind::delta, A[i]}});
        }
    } else {
        for (int i = 1; i <= n; ++i) {
            Scalar w = (A[i] / (A[i] - A[0])).pow(2);
            for (int j = 1; j <= n; ++j)
                if (j != i) w = w * A[i] / (A[i] - A[j]);
            atoms.push_back({w * D, DeltaAtom{DeltaKind::delta, A[i]}});
        }
        Scalar front = one;
        for (int i = 1; i <= n; ++i) front = front * A[0] / (A[0] - A[i]);
        Scalar sum = one;
        for (int l = 1; l <= n; ++l) sum += A[l] / (A[l] - A[0]);
        atoms.push_back({front * D, DeltaAtom{DeltaKind::d_delta, A[0]}});
        atoms.push_back({front * sum * D, DeltaAtom{DeltaKind::delta, A[0]}});
    }
    if (mut.scale_delta_coeff) atoms.front().first *= Scalar::integer(2);

    CoeffWindow rhs = delta_window(atoms, -K, K);
    for (int k = -K; k <= K; ++k)
        if ((lp.at(k) - sign * ln.at(k)) * D != rhs.at(k)) return false;
    return true;
}

bool verify_delta_substitution(const LaurentPoly2& Y, const Scalar& a, int K) {
    auto coeff = [&](int wp, int zp) -> Scalar {
        auto it = Y.find({wp, zp});
        return it == Y.end() ? Scalar() : it->second;
    };
    // g(k) = coefficient of w^k in Y(w, aw)
    std::map<int, Scalar> g;
    int reach = 0;
    for (const auto& [pq, c] : Y) {
        auto [p, q] = pq;
        g[p + q] += c * a.pow(q);
        reach = std::max({reach, std::abs(p), std::abs(q)});
    }
    auto g_at = [&](int k) -> Scalar {
        auto it = g.find(k);
        return it == g.end() ? Scalar() : it->second;
    };
    int R = K + reach + 1;
    for (int P = -K; P <= K; ++P) {
        for (int Q = -K; Q <= K; ++Q) {
            Scalar lhs, dlhs, dcorr;
            for (int k = -R; k <= R; ++k) {
                Scalar yc = coeff(P - k, Q + k);
                if (yc.is_zero()) continue;
                Scalar ak = a.pow(k);
                lhs += yc * ak;
                dlhs += yc * ak * Scalar::integer(k);
                dcorr += yc * ak * Scalar::integer(Q + k);
            }
            Scalar rhs = g_at(P + Q) * a.pow(-Q);
            if (lhs != rhs) return false;
            Scalar drhs = g_at(P + Q) * a.pow(-Q) * Scalar::integer(-Q) + dcorr;
            if (dlhs != drhs) return false;
        }
    }
    return true;
}

bool verify_delta_dilation_limit(int K) {
    auto cfg = FieldConfig::make(4, {"a"});
    Scalar a = Scalar::param(cfg, "a");
    Scalar one = Scalar::integer(1);
    for (int k = -K; k <= K; ++k) {
        Scalar u = (one - a.pow(k + 2)) / (one - a);
        Scalar lim;
        try {
            lim = limit_at(u, "a", Cyclo::integer(1));
        } catch (const GenuinePoleError&) {
            return false;
        }
        if (lim != Scalar::integer(k + 2)) return false;
    }
    return true;
}

}  // namespace tvo
