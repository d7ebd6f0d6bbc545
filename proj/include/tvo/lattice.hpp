#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tvo/scalar.hpp"

namespace tvo {

/// Element of the rank-nu integral lattice with orthonormal pairing.
struct LatticeVector {
    std::vector<long> coords;

    static LatticeVector zero(int nu) { return {std::vector<long>(nu, 0)}; }
    static LatticeVector unit(int nu, int i);  // 1-based colour index
    int nu() const { return static_cast<int>(coords.size()); }

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    bool operator==(const LatticeVector& o) const { return coords == o.coords; }
};

/// Orthonormal bilinear form.
long pairing(const LatticeVector& a, const LatticeVector& b);

/// Mod-2 reduction of a lattice vector, packed as a bitmask (bit i-1 = colour i).
using Coset = uint32_t;
Coset coset_reduce(const LatticeVector& a);
LatticeVector coset_rep(Coset c, int nu);

/// Sign rule of the twisted group algebra: +1 on generator pairs with
/// i <= j, -1 otherwise, extended bimultiplicatively. Optional mutation
/// flips the value on one generator pair (for sensitivity checks).
struct CocycleMutation {
    bool flip = false;
    int i = 1, j = 2;  // flipped generator pair (1-based)
};

int cocycle(const LatticeVector& a, const LatticeVector& b, const CocycleMutation& mut = {});

/// Finitely supported element of the twisted group algebra over the cosets.
class GroupAlgebraElement {
  public:
    GroupAlgebraElement() = default;
    static GroupAlgebraElement basis(Coset c) {
        GroupAlgebraElement e;
        e.terms_[c] = Scalar::integer(1);
        return e;
    }
    static GroupAlgebraElement unit() { return basis(0); }

    const std::map<Coset, Scalar>& terms() const { return terms_; }
    void add(Coset c, const Scalar& v);
    bool is_zero() const { return terms_.empty(); }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(const Scalar& s) const;
    bool operator==(const GroupAlgebraElement& o) const { return terms_ == o.terms_; }

  private:
    std::map<Coset, Scalar> terms_;
};

/// Twisted product, bilinear over the cocycle sign rule.
GroupAlgebraElement group_mul(const GroupAlgebraElement& u, const GroupAlgebraElement& v, int nu,
                              const CocycleMutation& mut = {});

}  // namespace tvo
