#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tvo {

using Rat = mpq_class;
using Int = mpz_class;

struct DivideByZeroError : std::domain_error {
    DivideByZeroError() : std::domain_error("division by zero") {}
};
struct OrderMismatchError : std::domain_error {
    OrderMismatchError() : std::domain_error("cyclotomic order mismatch") {}
};
struct PoleAtBindingError : std::domain_error {
    PoleAtBindingError() : std::domain_error("denominator vanishes at binding") {}
};
struct GenuinePoleError : std::domain_error {
    GenuinePoleError() : std::domain_error("uncancellable pole") {}
};

/// Element of Q(zeta_n), n a multiple of 4, stored as a residue mod the
/// n-th cyclotomic polynomial. Canonical: coordinate vector of length
/// phi(n), so equality is coordinate equality.
class Cyclo {
  public:
    Cyclo() : order_(4), coords_(2) {}

    static Cyclo rational(const Rat& q, int order = 4);
    static Cyclo integer(long v, int order = 4);
    /// Primitive order-th root of unity (order must be a multiple of 4).
    static Cyclo zeta(int order);
    /// zeta_den^num inside Q(zeta_ambient); requires den | ambient.
    static Cyclo root_of_unity(long num, int den, int ambient);

    int order() const { return order_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()

    /// Reinterpret in Q(zeta_m) for order | m.
    Cyclo embed(int new_order) const;

    Cyclo operator-() const;
    Cyclo inv() const;
    Cyclo pow(long e) const;
    /// Complex conjugation, zeta -> zeta^{-1}.
    Cyclo conj() const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }
    /// arbitrary total order (for use as a map key)
    static int cmp(const Cyclo& a, const Cyclo& b);

    std::string str() const;

    /// phi(n) = degree of the n-th cyclotomic polynomial.
    static int phi(int n);

  private:
    Cyclo(int order, std::vector<Rat> coords)
        : order_(order), coords_(std::move(coords)) {}
    static void align(Cyclo& a, Cyclo& b);

    int order_;
    std::vector<Rat> coords_;  // size phi(order_)
};

/// Names the formal parameters of the coefficient field plus the ambient
/// cyclotomic order, and how conjugation treats each parameter.
struct FieldConfig {
    enum class ConjRule { reciprocal, self };

    int ambient_order = 4;
    std::vector<std::string> params;
    std::vector<ConjRule> conj_rules;

    static std::shared_ptr<const FieldConfig> make(
        int ambient_order, std::vector<std::string> params = {},
        std::vector<ConjRule> rules = {});

    int index_of(const std::string& name) const;
    size_t nvars() const { return params.size(); }
};
using FieldConfigPtr = std::shared_ptr<const FieldConfig>;

/// Exponent vector of a monomial in the declared parameters.
struct Mono {
    std::vector<int> e;
    int total() const;
    bool operator==(const Mono& o) const { return e == o.e; }
};

/// Graded lexicographic order (total degree first).
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

/// Sparse multivariate polynomial with Cyclo coefficients.
class Poly {
  public:
    explicit Poly(int nvars = 0) : nvars_(nvars) {}
    static Poly constant(int nvars, const Cyclo& c);
    static Poly variable(int nvars, int idx);

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Cyclo constant_value() const;  // requires is_constant()
    const std::map<Mono, Cyclo, GrlexLess>& terms() const { return t_; }

    void add_term(const Mono& m, const Cyclo& c);

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Cyclo& c) const;
    Poly pow(int e) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && t_ == o.t_; }
    static int cmp(const Poly& a, const Poly& b);

    /// Leading term under grlex; requires nonzero.
    std::pair<Mono, Cyclo> leading() const;
    int deg_in(int var) const;
    /// componentwise minimum exponent over all terms (the monomial content)
    Mono min_exponents() const;

    /// Exact quotient, or nothing when division is not exact.
    static std::optional<Poly> try_div(const Poly& a, const Poly& b);

    /// Substitute one variable by a scalar value; variable drops out.
    Poly substitute(int var, const Cyclo& value) const;
    /// Full evaluation; requires one binding per variable.
    Cyclo evaluate(const std::vector<Cyclo>& values) const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    int nvars_;
    std::map<Mono, Cyclo, GrlexLess> t_;
};

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return Poly::cmp(a, b) < 0; }
};

/// Working scalar of the engine: either a cyclotomic constant or a fraction
/// of multivariate polynomials over Q(zeta_n) in the declared parameters.
/// The denominator is kept as a multiset of monic factors (every denominator
/// in this engine arises as a product of explicitly inverted atoms), and the
/// numerator is reduced against each factor by exact trial division.
/// Equality is exact, via cross-multiplication.
class Scalar {
  public:
    Scalar() : v_(Cyclo()) {}
    /*implicit*/ Scalar(Cyclo c) : v_(std::move(c)) {}

    static Scalar integer(long v) { return Scalar(Cyclo::integer(v)); }
    static Scalar rational(const Rat& q) { return Scalar(Cyclo::rational(q)); }
    static Scalar param(const FieldConfigPtr& cfg, int idx);
    static Scalar param(const FieldConfigPtr& cfg, const std::string& name);
    static Scalar from_polys(const FieldConfigPtr& cfg, Poly num, const Poly& den);

    bool is_constant() const { return std::holds_alternative<Cyclo>(v_); }
    const Cyclo& constant_value() const { return std::get<Cyclo>(v_); }
    bool is_zero() const;
    bool is_one() const;

    const FieldConfigPtr& config() const;
    const Poly& num() const { return frac().num; }
    Poly den() const;  // expanded product of the denominator factors

    Scalar operator-() const;
    Scalar inv() const;
    Scalar pow(long e) const;
    Scalar conj() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

  private:
    struct Frac {
        FieldConfigPtr cfg;
        Poly num;
        std::map<Poly, int, PolyLess> den;  // monic non-constant factors
    };
    const Frac& frac() const { return *std::get<std::shared_ptr<const Frac>>(v_); }
    static Scalar normalized(Frac f);
    Frac promoted(const FieldConfigPtr& cfg) const;
    static Scalar wrap(Frac f) {
        Scalar s;
        s.v_ = std::make_shared<const Frac>(std::move(f));
        return s;
    }

    std::variant<Cyclo, std::shared_ptr<const Frac>> v_;
};

/// Exact substitution of every parameter; throws PoleAtBindingError if the
/// denominator vanishes at the binding.
Cyclo evaluate(const Scalar& u, const std::map<std::string, Cyclo>& bindings);

/// Substitute after cancellation; throws GenuinePoleError when a denominator
/// factor still vanishes identically at the value.
Scalar limit_at(const Scalar& u, const std::string& param, const Cyclo& value);

Scalar binom(long n, long k);

}  // namespace tvo
