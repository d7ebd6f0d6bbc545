#include "tvo/lattice.hpp"

#include <cassert>
#include <stdexcept>

namespace tvo {

LatticeVector LatticeVector::unit(int nu, int i) {
    if (i < 1 || i > nu) throw std::out_of_range("colour index");
    LatticeVector v = zero(nu);
    v.coords[i - 1] = 1;
    return v;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    assert(coords.size() == o.coords.size());
    LatticeVector r = *this;
    for (size_t k = 0; k < coords.size(); ++k) r.coords[k] += o.coords[k];
    return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
    assert(coords.size() == o.coords.size());
    LatticeVector r = *this;
    for (size_t k = 0; k < coords.size(); ++k) r.coords[k] -= o.coords[k];
    return r;
}

LatticeVector LatticeVector::operator-() const {
    LatticeVector r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

long pairing(const LatticeVector& a, const LatticeVector& b) {
    assert(a.coords.size() == b.coords.size());
    long s = 0;
    for (size_t k = 0; k < a.coords.size(); ++k) s += a.coords[k] * b.coords[k];
    return s;
}

Coset coset_reduce(const LatticeVector& a) {
    Coset c = 0;
    for (size_t k = 0; k < a.coords.size(); ++k)
        if (a.coords[k] & 1) c |= (1u << k);
    return c;
}

LatticeVector coset_rep(Coset c, int nu) {
    LatticeVector v = LatticeVector::zero(nu);
    for (int k = 0; k < nu; ++k)
        if (c & (1u << k)) v.coords[k] = 1;
    return v;
}

int cocycle(const LatticeVector& a, const LatticeVector& b, const CocycleMutation& mut) {
    // (-1)^{sum_{i>j} a_i b_j}, computed on representatives
    long s = 0;
    int nu = a.nu();
    for (int i = 1; i < nu; ++i)
        for (int j = 0; j < i; ++j) s += a.coords[i] * b.coords[j];
    if (mut.flip) s += a.coords[mut.i - 1] * b.coords[mut.j - 1];
    return (s % 2 == 0) ? 1 : -1;
}

void GroupAlgebraElement::add(Coset c, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = terms_.find(c);
    if (it == terms_.end()) {
        terms_.emplace(c, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (const auto& [c, v] : o.terms_) r.add(c, v);
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (const auto& [c, v] : o.terms_) r.add(c, -v);
    return r;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Scalar& s) const {
    GroupAlgebraElement r;
    if (s.is_zero()) return r;
    for (const auto& [c, v] : terms_) r.add(c, v * s);
    return r;
}

GroupAlgebraElement group_mul(const GroupAlgebraElement& u, const GroupAlgebraElement& v, int nu,
                              const CocycleMutation& mut) {
    GroupAlgebraElement r;
    for (const auto& [ca, sa] : u.terms()) {
        LatticeVector ra = coset_rep(ca, nu);
        for (const auto& [cb, sb] : v.terms()) {
            int sign = cocycle(ra, coset_rep(cb, nu), mut);
            Scalar val = sa * sb;
            if (sign < 0) val = -val;
            r.add(ca ^ cb, val);
        }
    }
    return r;
}

}  // namespace tvo
