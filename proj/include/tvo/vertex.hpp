#pragma once

#include <map>

#include "tvo/check.hpp"
#include "tvo/fock.hpp"

namespace tvo {

struct InsufficientHeadroomError : std::domain_error {
    InsufficientHeadroomError()
        : std::domain_error("intermediate state escapes the materialised columns") {}
};
struct ZeroScaleError : std::domain_error {
    ZeroScaleError() : std::domain_error("vertex operator scale must be nonzero") {}
};

/// E_+ annihilates (z-powers <= 0), E_- creates (z-powers >= 0).
enum class ExpSign { annihilate, create };

/// z-power components of the exponential generator E_sign(alpha, scale*z)
/// applied to v; exact on [pow_lo, pow_hi]. Components are exact vectors,
/// never truncated.
std::map<int, FockVector> exp_series(ExpSign sign, const LatticeVector& alpha,
                                     const Scalar& scale, const FockVector& v, int pow_lo,
                                     int pow_hi);

/// Single z-power component of E_sign(alpha, scale*z).
FockVector apply_exp_component(ExpSign sign, const LatticeVector& alpha, const Scalar& scale,
                               int zpow, const FockVector& v);

/// One vertex operator: colours i, j and a nonzero scale. For i = j the
/// scale-1 operator is the bare Heisenberg current (times 4) and scale -1
/// gives the zero operator.
struct VertexSpec {
    int i, j;
    Scalar a;
};

/// z-power components of the vertex operator applied to one basis state,
/// exact on [pow_lo, pow_hi]; the coefficient of z^{-n} is the mode n image.
std::map<int, FockVector> vertex_series(int nu, const VertexSpec& spec, const FockState& s,
                                        int pow_lo, int pow_hi, const CocycleMutation& mut = {});

/// Mode n applied to an arbitrary vector (exact, no basis needed).
FockVector apply_vertex_mode(int nu, const VertexSpec& spec, int n, const FockVector& v,
                             const CocycleMutation& mut = {});

/// Vector in basis coordinates: (column index, coefficient), sorted by index.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec to_sparse(const FockVector& v, const TruncatedBasis& basis);
FockVector to_fock(const SparseVec& v, const TruncatedBasis& basis);
SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Scalar& s);

/// Exact matrix of one mode on the truncated basis. Columns are materialised
/// for states of degree <= col_cap; image vectors are exact (no row cut).
class ModeOp {
  public:
    const TruncatedBasis* basis = nullptr;
    int mode = 0;
    int col_cap = 0;
    std::vector<SparseVec> cols;

    const SparseVec& column(int idx) const;
    /// Throws InsufficientHeadroomError if v touches a column beyond col_cap.
    SparseVec apply(const SparseVec& v) const;
};

using ModeFamily = std::map<int, ModeOp>;

/// All modes of one vertex operator in [mode_lo, mode_hi] at once (one
/// series pass per column). Requires basis depth >= col_cap + max |mode|.
ModeFamily build_modes(const TruncatedBasis& basis, const VertexSpec& spec, int mode_lo,
                       int mode_hi, int col_cap, const CocycleMutation& mut = {});

/// Shared cache of mode families over one truncated basis.
class VertexContext {
  public:
    explicit VertexContext(const TruncatedBasis& basis, CocycleMutation mut = {})
        : basis_(&basis), mut_(mut) {}

    const TruncatedBasis& basis() const { return *basis_; }
    const CocycleMutation& mutation() const { return mut_; }
    const ModeOp& mode(const VertexSpec& spec, int n, int mode_lo, int mode_hi, int col_cap);

  private:
    struct Key {
        int i, j;
        std::string a;
        int lo, hi, cap;
        bool operator<(const Key& o) const {
            return std::tie(i, j, a, lo, hi, cap) < std::tie(o.i, o.j, o.a, o.lo, o.hi, o.cap);
        }
    };
    const TruncatedBasis* basis_;
    CocycleMutation mut_;
    std::map<Key, ModeFamily> fams_;
};

/// The six-term expected commutator [x_ij(a,m), x_kl(b,n)] applied to one
/// column, extracted mechanically from the delta/(D delta) coefficient rules.
SparseVec expected_commutator_apply(VertexContext& ctx, int i, int j, const Scalar& a, int m,
                                    int k, int l, const Scalar& b, int n, int col, int D, int W);

/// Exhaustive commutator check over all colour tuples and modes |m|,|n| <= W,
/// compared column-by-column on states of degree <= D.
CheckReport verify_commutator_relations(VertexContext& ctx, int nu, const Scalar& a,
                                        const Scalar& b, int D, int W);

/// x_ji(a^{-1}, n) = -(-1)^n a^n x_ij(a, n) on all columns of degree <= D.
CheckReport verify_mode_transpose_symmetry(VertexContext& ctx, int nu, const Scalar& a, int D,
                                           int W);

/// Commutation with the group translations: [x_ij(a,n), T_alpha] =
/// ((-1)^{(e_i - e_j, alpha)} - 1) T_alpha x_ij(a,n).
CheckReport verify_translation_commutation(VertexContext& ctx, int nu, const Scalar& a, int D,
                                           int W);

/// Every diagonal mode entry is regular at scale 1 with the bare-current
/// limit: built over the one-parameter field, compared entrywise.
CheckReport verify_diagonal_limit(int nu, int D, int W);

}  // namespace tvo
