#pragma once

#include <vector>

#include "tvo/lattice.hpp"

namespace tvo {

/// Basis vector of the Fock space: a coset of the mod-2 lattice quotient
/// together with a multiset of creation generators, each a pair
/// (degree m, colour i) with m odd and positive. Parts are kept sorted.
struct FockState {
    Coset coset = 0;
    std::vector<std::pair<int, int>> parts;  // (m, colour), ascending

    int degree() const;
    void insert_part(int m, int colour);
    bool operator==(const FockState& o) const { return coset == o.coset && parts == o.parts; }
    bool operator<(const FockState& o) const;  // degree-major, then coset, then parts
};

class FockVector {
  public:
    FockVector() = default;
    static FockVector basis(FockState s) {
        FockVector v;
        v.terms_[std::move(s)] = Scalar::integer(1);
        return v;
    }
    static FockVector vacuum(Coset c = 0) { return basis(FockState{c, {}}); }

    const std::map<FockState, Scalar>& terms() const { return terms_; }
    void add(const FockState& s, const Scalar& v);
    bool is_zero() const { return terms_.empty(); }

    FockVector operator+(const FockVector& o) const;
    FockVector operator-(const FockVector& o) const;
    FockVector& operator+=(const FockVector& o);
    FockVector scaled(const Scalar& s) const;
    bool operator==(const FockVector& o) const { return terms_ == o.terms_; }

  private:
    std::map<FockState, Scalar> terms_;
};

/// Heisenberg generator of colour i and odd mode n: multiplication for
/// n < 0, derivation with pair value n/2 per matching occurrence for n > 0.
FockVector heis_act(int colour, int n, const FockVector& v);

/// Translation by alpha on the group-algebra part, twisted by the cocycle.
FockVector group_act(const LatticeVector& alpha, const FockVector& v,
                     const CocycleMutation& mut = {});

/// Deterministic enumeration of all states of degree <= depth.
class TruncatedBasis {
  public:
    static TruncatedBasis enumerate(int nu, int depth);

    int nu() const { return nu_; }
    int depth() const { return depth_; }
    int size() const { return static_cast<int>(states_.size()); }
    const FockState& at(int i) const { return states_.at(i); }
    /// -1 when the state lies beyond the truncation.
    int index_of(const FockState& s) const;
    /// index of the first state of the given degree
    int degree_begin(int d) const { return degree_begin_.at(d); }

  private:
    int nu_ = 0, depth_ = 0;
    std::vector<FockState> states_;
    std::map<FockState, int> index_;
    std::vector<int> degree_begin_;
};

/// Number of colour-decorated partitions into odd parts, by total degree;
/// independent counting route for the enumeration.
std::vector<long> odd_partition_counts(int nu, int depth);

}  // namespace tvo
