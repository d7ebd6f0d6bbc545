#include "tvo/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace tvo {

// ---------------------------------------------------------------------------
// dense univariate helpers over Rat (used only for the cyclotomic layer)

namespace {

using DensePoly = std::vector<Rat>;  // coefficient of x^k at index k

void dp_trim(DensePoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of a by monic b
DensePoly dp_mod(DensePoly a, const DensePoly& b) {
    assert(!b.empty() && b.back() == 1);
    dp_trim(a);
    while (a.size() >= b.size()) {
        Rat lead = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
        dp_trim(a);
    }
    return a;
}

// exact quotient of a by monic b (remainder must vanish)
DensePoly dp_div_exact(DensePoly a, const DensePoly& b) {
    assert(!b.empty() && b.back() == 1);
    dp_trim(a);
    if (a.size() < b.size()) {
        assert(a.empty());
        return {};
    }
    DensePoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        Rat lead = a.back();
        size_t shift = a.size() - b.size();
        q[shift] = lead;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
        dp_trim(a);
    }
    assert(a.empty());
    return q;
}

int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Phi_n computed from x^n - 1 = prod_{d | n} Phi_d.
const DensePoly& cyclotomic_poly(int n) {
    static std::map<int, DensePoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    DensePoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) p = dp_div_exact(std::move(p), cyclotomic_poly(d));
    }
    return cache.emplace(n, std::move(p)).first->second;
}

// extended euclid: returns (g, s) with s*a = g mod b, g = gcd(a, b) monic
std::pair<DensePoly, DensePoly> dp_half_xgcd(DensePoly a, DensePoly b) {
    DensePoly s0{Rat(1)}, s1;
    while (!b.empty()) {
        DensePoly r = a;
        DensePoly q(r.size() >= b.size() ? r.size() - b.size() + 1 : 1);
        while (r.size() >= b.size()) {
            Rat c = r.back() / b.back();
            size_t shift = r.size() - b.size();
            q[shift] = c;
            for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
            dp_trim(r);
        }
        DensePoly qs(q.size() + (s1.empty() ? 0 : s1.size() - 1) + 1);
        if (!s1.empty()) {
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        }
        DensePoly s2(std::max(s0.size(), qs.size()));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        dp_trim(s2);
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : s0) c /= lead;
    }
    return {a, s0};
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyclo

int Cyclo::phi(int n) { return euler_phi(n); }

Cyclo Cyclo::rational(const Rat& q, int order) {
    if (order % 4 != 0) throw std::invalid_argument("ambient order must be a multiple of 4");
    std::vector<Rat> c(euler_phi(order));
    c[0] = q;
    c[0].canonicalize();
    return Cyclo(order, std::move(c));
}

Cyclo Cyclo::integer(long v, int order) { return rational(Rat(v), order); }

Cyclo Cyclo::zeta(int order) { return root_of_unity(1, order, order); }

Cyclo Cyclo::root_of_unity(long num, int den, int ambient) {
    if (ambient % 4 != 0) throw std::invalid_argument("ambient order must be a multiple of 4");
    if (den <= 0 || ambient % den != 0) throw OrderMismatchError();
    long k = ((num % den) + den) % den;
    long e = k * (ambient / den);
    DensePoly p(e + 1);
    p[e] = 1;
    p = dp_mod(std::move(p), cyclotomic_poly(ambient));
    std::vector<Rat> c(euler_phi(ambient));
    for (size_t i = 0; i < p.size(); ++i) c[i] = p[i];
    return Cyclo(ambient, std::move(c));
}

bool Cyclo::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) throw std::logic_error("not a rational value");
    return coords_[0];
}

Cyclo Cyclo::embed(int new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0) throw OrderMismatchError();
    int stride = new_order / order_;
    DensePoly p;
    for (size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k] == 0) continue;
        size_t e = k * stride;
        if (p.size() <= e) p.resize(e + 1);
        p[e] += coords_[k];
    }
    p = dp_mod(std::move(p), cyclotomic_poly(new_order));
    std::vector<Rat> c(euler_phi(new_order));
    for (size_t i = 0; i < p.size(); ++i) c[i] = p[i];
    return Cyclo(new_order, std::move(c));
}

void Cyclo::align(Cyclo& a, Cyclo& b) {
    if (a.order_ == b.order_) return;
    if (a.is_rational()) { a = rational(a.coords_[0], b.order_); return; }
    if (b.is_rational()) { b = rational(b.coords_[0], a.order_); return; }
    if (b.order_ % a.order_ == 0) { a = a.embed(b.order_); return; }
    if (a.order_ % b.order_ == 0) { b = b.embed(a.order_); return; }
    throw OrderMismatchError();
}

Cyclo Cyclo::operator-() const {
    auto c = coords_;
    for (auto& r : c) r = -r;
    return Cyclo(order_, std::move(c));
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    Cyclo::align(x, y);
    for (size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] += y.coords_[i];
    return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    Cyclo x = a, y = b;
    Cyclo::align(x, y);
    size_t na = x.coords_.size(), nb = y.coords_.size();
    DensePoly p(na + nb - 1);
    for (size_t i = 0; i < na; ++i) {
        if (x.coords_[i] == 0) continue;
        for (size_t j = 0; j < nb; ++j) {
            if (y.coords_[j] == 0) continue;
            p[i + j] += x.coords_[i] * y.coords_[j];
        }
    }
    p = dp_mod(std::move(p), cyclotomic_poly(x.order_));
    std::vector<Rat> c(euler_phi(x.order_));
    for (size_t i = 0; i < p.size(); ++i) c[i] = p[i];
    return Cyclo(x.order_, std::move(c));
}

Cyclo Cyclo::inv() const {
    if (is_zero()) throw DivideByZeroError();
    if (is_rational()) return rational(Rat(1) / coords_[0], order_);
    DensePoly a(coords_.begin(), coords_.end());
    dp_trim(a);
    auto [g, s] = dp_half_xgcd(a, cyclotomic_poly(order_));
    // Phi_n is irreducible over Q, so g = 1
    assert(g.size() == 1 && g[0] == 1);
    DensePoly r = dp_mod(std::move(s), cyclotomic_poly(order_));
    std::vector<Rat> c(euler_phi(order_));
    for (size_t i = 0; i < r.size(); ++i) c[i] = r[i];
    return Cyclo(order_, std::move(c));
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inv(); }

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclo result = Cyclo::integer(1, order_);
    Cyclo base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

Cyclo Cyclo::conj() const {
    // zeta^k -> zeta^{(n-1)k mod n}
    DensePoly p;
    for (size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k] == 0) continue;
        size_t e = (k * (order_ - 1)) % order_;
        if (p.size() <= e) p.resize(e + 1);
        p[e] += coords_[k];
    }
    p = dp_mod(std::move(p), cyclotomic_poly(order_));
    std::vector<Rat> c(euler_phi(order_));
    for (size_t i = 0; i < p.size(); ++i) c[i] = p[i];
    return Cyclo(order_, std::move(c));
}

bool Cyclo::operator==(const Cyclo& o) const {
    Cyclo x = *this, y = o;
    align(x, y);
    return x.coords_ == y.coords_;
}

int Cyclo::cmp(const Cyclo& a, const Cyclo& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
    for (size_t i = 0; i < a.coords_.size(); ++i) {
        int c = ::cmp(a.coords_[i], b.coords_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Cyclo::str() const {
    if (is_rational()) return coords_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t k = coords_.size(); k-- > 0;) {
        const Rat& c = coords_[k];
        if (c == 0) continue;
        Rat a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (k == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "zeta" << order_;
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// FieldConfig

std::shared_ptr<const FieldConfig> FieldConfig::make(int ambient_order,
                                                     std::vector<std::string> params,
                                                     std::vector<ConjRule> rules) {
    if (ambient_order % 4 != 0)
        throw std::invalid_argument("ambient order must be a multiple of 4");
    auto cfg = std::make_shared<FieldConfig>();
    cfg->ambient_order = ambient_order;
    cfg->params = std::move(params);
    if (rules.empty()) rules.assign(cfg->params.size(), ConjRule::reciprocal);
    if (rules.size() != cfg->params.size())
        throw std::invalid_argument("one conjugation rule per parameter");
    cfg->conj_rules = std::move(rules);
    return cfg;
}

int FieldConfig::index_of(const std::string& name) const {
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown parameter: " + name);
}

// ---------------------------------------------------------------------------
// Mono / Poly

int Mono::total() const { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

Poly Poly::constant(int nvars, const Cyclo& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.t_.emplace(Mono{std::vector<int>(nvars, 0)}, c);
    return p;
}

Poly Poly::variable(int nvars, int idx) {
    Poly p(nvars);
    Mono m{std::vector<int>(nvars, 0)};
    m.e.at(idx) = 1;
    p.t_.emplace(std::move(m), Cyclo::integer(1));
    return p;
}

bool Poly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.total() == 0);
}

Cyclo Poly::constant_value() const {
    if (t_.empty()) return Cyclo::integer(0);
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return t_.begin()->second;
}

void Poly::add_term(const Mono& m, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly r(a.nvars_);
    for (const auto& [ma, ca] : a.t_) {
        for (const auto& [mb, cb] : b.t_) {
            Mono m{std::vector<int>(a.nvars_)};
            for (int i = 0; i < a.nvars_; ++i) m.e[i] = ma.e[i] + mb.e[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Cyclo& c) const {
    Poly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : t_) r.t_.emplace(m, v * c);
    return r;
}

Poly Poly::pow(int e) const {
    assert(e >= 0);
    Poly result = Poly::constant(nvars_, Cyclo::integer(1));
    Poly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::pair<Mono, Cyclo> Poly::leading() const {
    if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
    auto it = t_.rbegin();
    return {it->first, it->second};
}

int Poly::deg_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.e[var]);
    return d;
}

Mono Poly::min_exponents() const {
    Mono m{std::vector<int>(nvars_, 0)};
    bool first = true;
    for (const auto& [mo, c] : t_) {
        if (first) {
            m = mo;
            first = false;
        } else {
            for (int i = 0; i < nvars_; ++i) m.e[i] = std::min(m.e[i], mo.e[i]);
        }
    }
    return m;
}

std::optional<Poly> Poly::try_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivideByZeroError();
    Poly r = a;
    Poly q(a.nvars_);
    auto [lbm, lbc] = b.leading();
    Cyclo lbc_inv = lbc.inv();
    while (!r.is_zero()) {
        auto [lm, lc] = r.leading();
        Mono m{std::vector<int>(a.nvars_)};
        for (int i = 0; i < a.nvars_; ++i) {
            m.e[i] = lm.e[i] - lbm.e[i];
            if (m.e[i] < 0) return std::nullopt;
        }
        Cyclo c = lc * lbc_inv;
        Poly t(a.nvars_);
        t.add_term(m, c);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_ ? -1 : 1;
    auto ia = a.t_.begin(), ib = b.t_.begin();
    GrlexLess less;
    for (; ia != a.t_.end() && ib != b.t_.end(); ++ia, ++ib) {
        if (less(ia->first, ib->first)) return -1;
        if (less(ib->first, ia->first)) return 1;
        int c = Cyclo::cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.t_.end()) return 1;
    if (ib != b.t_.end()) return -1;
    return 0;
}

Poly Poly::substitute(int var, const Cyclo& value) const {
    std::map<int, Poly> by_pow;
    for (const auto& [m, c] : t_) {
        Mono stripped = m;
        int p = stripped.e[var];
        stripped.e[var] = 0;
        auto [it, inserted] = by_pow.try_emplace(p, nvars_);
        it->second.add_term(stripped, c);
    }
    Poly result(nvars_);
    Cyclo vp = Cyclo::integer(1);
    int prev = 0;
    for (const auto& [p, poly] : by_pow) {
        for (int i = prev; i < p; ++i) vp = vp * value;
        prev = p;
        result = result + poly.scaled(vp);
    }
    return result;
}

Cyclo Poly::evaluate(const std::vector<Cyclo>& values) const {
    assert(static_cast<int>(values.size()) == nvars_);
    Cyclo acc = Cyclo::integer(0);
    for (const auto& [m, c] : t_) {
        Cyclo term = c;
        for (int i = 0; i < nvars_; ++i)
            if (m.e[i] != 0) term = term * values[i].pow(m.e[i]);
        acc = acc + term;
    }
    return acc;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending grlex
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool negated = false;
        if (c.is_rational() && c.rational_value() < 0) {
            negated = true;
            cs = (-c).str();
        }
        os << (first ? (negated ? "-" : "") : (negated ? " - " : " + "));
        first = false;
        bool has_vars = m.total() > 0;
        bool unit = (cs == "1");
        bool composite = cs.find_first_of("+-", 1) != std::string::npos;
        if (!has_vars) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (!unit) os << (composite ? "(" + cs + ")" : cs) << "*";
            bool firstvar = true;
            for (size_t i = 0; i < m.e.size(); ++i) {
                if (m.e[i] == 0) continue;
                if (!firstvar) os << "*";
                firstvar = false;
                os << names[i];
                if (m.e[i] > 1) os << "^" << m.e[i];
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::param(const FieldConfigPtr& cfg, int idx) {
    return wrap(Frac{cfg, Poly::variable(cfg->nvars(), idx), {}});
}

Scalar Scalar::param(const FieldConfigPtr& cfg, const std::string& name) {
    return param(cfg, cfg->index_of(name));
}

const FieldConfigPtr& Scalar::config() const {
    static FieldConfigPtr none;
    if (is_constant()) return none;
    return frac().cfg;
}

Poly Scalar::den() const {
    const Frac& f = frac();
    Poly d = Poly::constant(f.num.nvars(), Cyclo::integer(1));
    for (const auto& [fac, e] : f.den) d = d * fac.pow(e);
    return d;
}

// Splits off the monomial content of a candidate denominator factor, makes it
// monic, and registers it; the scaling unit is pushed into the numerator.
namespace {

void add_den_factor(Poly factor, int e, std::map<Poly, int, PolyLess>& den, Poly& num) {
    assert(e > 0);
    if (factor.is_zero()) throw DivideByZeroError();
    Mono content = factor.min_exponents();
    if (content.total() > 0) {
        int nv = factor.nvars();
        Poly stripped(nv);
        for (const auto& [m, c] : factor.terms()) {
            Mono me = m;
            for (int i = 0; i < nv; ++i) me.e[i] -= content.e[i];
            stripped.add_term(me, c);
        }
        for (int i = 0; i < nv; ++i) {
            if (content.e[i] == 0) continue;
            den[Poly::variable(nv, i)] += content.e[i] * e;
        }
        factor = std::move(stripped);
    }
    if (factor.is_constant()) {
        num = num.scaled(factor.constant_value().pow(-(long)e));
        return;
    }
    Cyclo lead = factor.leading().second;
    if (!(lead == Cyclo::integer(1))) {
        factor = factor.scaled(lead.inv());
        num = num.scaled(lead.pow(-(long)e));
    }
    den[factor] += e;
}

}  // namespace

Scalar Scalar::normalized(Frac f) {
    if (f.num.is_zero()) return Scalar(Cyclo::integer(0));
    for (auto it = f.den.begin(); it != f.den.end();) {
        while (it->second > 0) {
            auto q = Poly::try_div(f.num, it->first);
            if (!q) break;
            f.num = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? f.den.erase(it) : std::next(it);
    }
    if (f.den.empty() && f.num.is_constant()) return Scalar(f.num.constant_value());
    return wrap(std::move(f));
}

Scalar Scalar::from_polys(const FieldConfigPtr& cfg, Poly num, const Poly& den) {
    if (den.is_zero()) throw DivideByZeroError();
    Frac f{cfg, std::move(num), {}};
    if (!den.is_constant()) {
        add_den_factor(den, 1, f.den, f.num);
    } else {
        f.num = f.num.scaled(den.constant_value().inv());
    }
    return normalized(std::move(f));
}

Scalar::Frac Scalar::promoted(const FieldConfigPtr& cfg) const {
    if (!is_constant()) {
        if (frac().cfg != cfg) throw std::logic_error("mixing scalar field configs");
        return frac();
    }
    int n = static_cast<int>(cfg->nvars());
    return Frac{cfg, Poly::constant(n, constant_value()), {}};
}

bool Scalar::is_zero() const { return is_constant() && constant_value().is_zero(); }

bool Scalar::is_one() const { return is_constant() && constant_value() == Cyclo::integer(1); }

Scalar Scalar::operator-() const {
    if (is_constant()) return Scalar(-constant_value());
    return wrap(Frac{frac().cfg, -frac().num, frac().den});
}

Scalar Scalar::inv() const {
    if (is_constant()) return Scalar(constant_value().inv());
    const Frac& f = frac();
    Frac r{f.cfg, Poly::constant(f.num.nvars(), Cyclo::integer(1)), {}};
    for (const auto& [fac, e] : f.den) r.num = r.num * fac.pow(e);
    add_den_factor(f.num, 1, r.den, r.num);
    return normalized(std::move(r));
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar result = Scalar::integer(1);
    Scalar base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

namespace {
FieldConfigPtr common_cfg(const Scalar& a, const Scalar& b) {
    const FieldConfigPtr& ca = a.config();
    const FieldConfigPtr& cb = b.config();
    if (ca && cb && ca != cb) throw std::logic_error("mixing scalar field configs");
    return ca ? ca : cb;
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_constant() && b.is_constant())
        return Scalar(a.constant_value() + b.constant_value());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    FieldConfigPtr cfg = common_cfg(a, b);
    auto fa = a.promoted(cfg), fb = b.promoted(cfg);
    // union of the factor multisets; each side is multiplied by what it lacks
    Scalar::Frac r{cfg, Poly(fa.num.nvars()), fa.den};
    for (const auto& [fac, e] : fb.den) {
        auto it = r.den.find(fac);
        if (it == r.den.end()) r.den.emplace(fac, e);
        else it->second = std::max(it->second, e);
    }
    Poly na = fa.num, nb = fb.num;
    for (const auto& [fac, e] : r.den) {
        auto ita = fa.den.find(fac);
        auto itb = fb.den.find(fac);
        int da = e - (ita == fa.den.end() ? 0 : ita->second);
        int db = e - (itb == fb.den.end() ? 0 : itb->second);
        if (da > 0) na = na * fac.pow(da);
        if (db > 0) nb = nb * fac.pow(db);
    }
    r.num = na + nb;
    return Scalar::normalized(std::move(r));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_constant() && b.is_constant())
        return Scalar(a.constant_value() * b.constant_value());
    if (a.is_zero() || b.is_zero()) return Scalar();
    FieldConfigPtr cfg = common_cfg(a, b);
    auto fa = a.promoted(cfg), fb = b.promoted(cfg);
    Scalar::Frac r{cfg, fa.num * fb.num, fa.den};
    for (const auto& [fac, e] : fb.den) r.den[fac] += e;
    return Scalar::normalized(std::move(r));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

bool Scalar::operator==(const Scalar& o) const {
    if (is_constant() && o.is_constant()) return constant_value() == o.constant_value();
    // exact cross-multiplication over the expanded denominators
    FieldConfigPtr cfg = common_cfg(*this, o);
    auto fa = promoted(cfg), fb = o.promoted(cfg);
    Poly da = Poly::constant(fa.num.nvars(), Cyclo::integer(1));
    for (const auto& [fac, e] : fa.den) da = da * fac.pow(e);
    Poly db = Poly::constant(fb.num.nvars(), Cyclo::integer(1));
    for (const auto& [fac, e] : fb.den) db = db * fac.pow(e);
    return fa.num * db == fb.num * da;
}

namespace {

// P with every reciprocal-rule exponent k replaced by (max_k - k), plus the
// compensating monomial max_k; coefficients conjugated.
std::pair<Poly, Mono> conj_poly(const Poly& p, const FieldConfig& cfg) {
    Mono mx{std::vector<int>(p.nvars(), 0)};
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < p.nvars(); ++i)
            if (cfg.conj_rules[i] == FieldConfig::ConjRule::reciprocal)
                mx.e[i] = std::max(mx.e[i], m.e[i]);
    Poly out(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Mono me = m;
        for (int i = 0; i < p.nvars(); ++i)
            if (cfg.conj_rules[i] == FieldConfig::ConjRule::reciprocal)
                me.e[i] = mx.e[i] - m.e[i];
        out.add_term(me, c.conj());
    }
    return {out, mx};
}

}  // namespace

Scalar Scalar::conj() const {
    if (is_constant()) return Scalar(constant_value().conj());
    const auto& f = frac();
    int nv = f.num.nvars();
    auto mono_scalar = [&](const Mono& m, long sign) {
        Scalar s = Scalar::integer(1);
        for (int i = 0; i < nv; ++i)
            if (m.e[i] != 0) s = s * Scalar::param(f.cfg, i).pow(sign * m.e[i]);
        return s;
    };
    auto [cn, mn] = conj_poly(f.num, *f.cfg);
    Scalar out = Scalar::normalized(Frac{f.cfg, cn, {}}) * mono_scalar(mn, -1);
    for (const auto& [fac, e] : f.den) {
        auto [cf, mf] = conj_poly(fac, *f.cfg);
        Scalar cfs = Scalar::normalized(Frac{f.cfg, cf, {}}) * mono_scalar(mf, -1);
        out = out / cfs.pow(e);
    }
    return out;
}

std::string Scalar::str() const {
    if (is_constant()) return constant_value().str();
    const auto& f = frac();
    std::string n = f.num.str(f.cfg->params);
    if (f.den.empty()) return n;
    return "(" + n + ")/(" + den().str(f.cfg->params) + ")";
}

Cyclo evaluate(const Scalar& u, const std::map<std::string, Cyclo>& bindings) {
    if (u.is_constant()) return u.constant_value();
    const FieldConfigPtr& cfg = u.config();
    Poly den_poly = u.den();
    std::vector<Cyclo> values;
    values.reserve(cfg->nvars());
    for (size_t i = 0; i < cfg->nvars(); ++i) {
        auto it = bindings.find(cfg->params[i]);
        if (it == bindings.end()) {
            if (u.num().deg_in(i) > 0 || den_poly.deg_in(i) > 0)
                throw std::invalid_argument("unbound parameter: " + cfg->params[i]);
            values.push_back(Cyclo::integer(0));
        } else {
            values.push_back(it->second);
        }
    }
    Cyclo den = den_poly.evaluate(values);
    if (den.is_zero()) throw PoleAtBindingError();
    return u.num().evaluate(values) / den;
}

Scalar limit_at(const Scalar& u, const std::string& param, const Cyclo& value) {
    if (u.is_constant()) return u;
    const FieldConfigPtr& cfg = u.config();
    int idx = cfg->index_of(param);
    Scalar out = Scalar::from_polys(cfg, u.num().substitute(idx, value),
                                    Poly::constant(u.num().nvars(), Cyclo::integer(1)));
    Poly full = u.den();
    Poly sub = full.substitute(idx, value);
    if (sub.is_zero()) throw GenuinePoleError();
    return out / Scalar::from_polys(cfg, sub, Poly::constant(full.nvars(), Cyclo::integer(1)));
}

Scalar binom(long n, long k) {
    if (k < 0 || k > n) return Scalar();
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar::rational(Rat(r));
}

}  // namespace tvo
