#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tvo/scalar.hpp"

namespace tvo {

struct MixedDirectionsError : std::domain_error {
    MixedDirectionsError() : std::domain_error("factors with mixed expansion directions") {}
};

enum class Direction { positive, negative };

/// One geometric factor of a one-sided expansion: in the positive direction
/// 1/(1-Ax) expanded in x^0, x^1, ...; in the negative direction
/// A^{-1}x^{-1}/(1-A^{-1}x^{-1}) expanded in x^{-1}, x^{-2}, ...
struct OneSidedFactor {
    Scalar pole;
    Direction dir = Direction::positive;
    int multiplicity = 1;
};

enum class DeltaKind { delta, d_delta };

/// delta(Ax) has coefficient A^k at x^k; (D delta)(Ax) has k*A^k.
struct DeltaAtom {
    DeltaKind kind;
    Scalar scale;
};

/// Exact coefficients of a formal distribution on a finite exponent window.
class CoeffWindow {
  public:
    CoeffWindow(int lo, int hi) : lo_(lo), hi_(hi), c_(hi - lo + 1) {}
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const Scalar& at(int k) const { return c_.at(k - lo_); }
    void set(int k, Scalar v) { c_.at(k - lo_) = std::move(v); }
    void add(int k, const Scalar& v) { c_.at(k - lo_) += v; }
    CoeffWindow restrict_to(int lo, int hi) const;
    bool operator==(const CoeffWindow& o) const { return lo_ == o.lo_ && hi_ == o.hi_ && c_ == o.c_; }

  private:
    int lo_, hi_;
    std::vector<Scalar> c_;
};

CoeffWindow expand_product(const std::vector<OneSidedFactor>& factors, int lo, int hi);
CoeffWindow delta_window(const std::vector<std::pair<Scalar, DeltaAtom>>& atoms, int lo, int hi);

/// The four partial-fraction identities behind the delta decompositions:
/// *_b forms are stated in an auxiliary point B, *_x forms in the series
/// variable x. "direct" carries the squared pole on the left factor chain,
/// "reflected" weights the chain by the opposite pole.
enum class RationalId { direct_b, reflected_b, direct_x, reflected_x };

/// double_pole: squared-factor expansion against (D delta) + delta atoms;
/// simple_poles: plain product split into delta atoms only.
enum class DeltaId { double_pole, simple_poles };

struct SeriesMutation {
    bool drop_bracket_one = false;   // omit the "+1" in the direct_x bracket
    bool scale_delta_coeff = false;  // double one delta-atom coefficient
};

/// LHS - RHS, cleared of denominators, must be the zero rational function.
bool verify_rational_identity(RationalId id, int n, const SeriesMutation& mut = {});

/// One-sided expansions agree with the delta-atom combination on [-K, K].
bool verify_delta_identity(DeltaId id, int n, int K, const SeriesMutation& mut = {});

/// Finite bivariate Laurent polynomial, keyed by (w-exponent, z-exponent).
using LaurentPoly2 = std::map<std::pair<int, int>, Scalar>;

/// Substitution rules for delta and (D delta) against a two-variable series:
/// Y(w,z) delta(aw/z) = Y(w,aw) delta(aw/z) and the (D delta) variant with
/// the D_z correction term, checked coefficient-wise on [-K,K]^2.
bool verify_delta_substitution(const LaurentPoly2& Y, const Scalar& a, int K);

/// (delta(z) - a^2 delta(az))/(1-a) tends to (D delta)(z) + 2 delta(z):
/// per exponent k the coefficient (1-a^{k+2})/(1-a) has limit k+2 at a=1.
bool verify_delta_dilation_limit(int K);

}  // namespace tvo
