#pragma once

#include "jlq/gaussian_rational.hpp"
#include "jlq/symbol.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jlq {

// Sparse power product; exponents may be negative (Laurent monomials).
class Monomial {
public:
    using Factor = std::pair<Var, int>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial of(Var v, int e = 1);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const;
    int exponent(Var v) const;
    bool has_negative() const;

    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;
    bool divides(const Monomial& o) const;  // this | o, nonnegative exponents
    Monomial without(Var v) const;
    Monomial pow(int n) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.f_ != b.f_; }

    std::size_t hash() const;
    // Factors sorted by variable rank, e.g. "t^2*qd".
    std::string str() const;

private:
    std::vector<Factor> f_;  // sorted by Var id, no zero exponents
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Storage order: graded, then lexicographic by variable id. Positive when a > b.
int storage_compare(const Monomial& a, const Monomial& b);
// Canonical order: graded, then lexicographic by variable rank.
int rank_order_compare(const Monomial& a, const Monomial& b);

struct RankLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return rank_order_compare(a, b) < 0; }
};

struct Term {
    Monomial m;
    GQ c;
};

// Sparse multivariate (Laurent) polynomial over Q(i).
class Poly {
public:
    Poly() = default;
    Poly(const GQ& c);
    Poly(long c) : Poly(GQ(c)) {}
    static Poly variable(Var v, int e = 1);
    static Poly monomial(const Monomial& m, const GQ& c = GQ(1));
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    GQ constant_value() const;  // requires is_constant()
    GQ constant_term() const;
    bool is_monomial() const { return t_.size() == 1; }

    int degree(Var v) const;
    int min_degree(Var v) const;
    int total_degree() const;
    bool has_var(Var v) const;
    std::vector<Var> variables() const;  // sorted by id
    // Per-variable minimum exponent over all terms (only variables that occur).
    Monomial min_monomial() const;
    bool has_negative_exponent() const;

    const Term& lead() const { return t_.front(); }  // storage order
    // Leading term in canonical (rank) order.
    const Term& rank_lead() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const GQ& c) const;
    Poly shifted(const Monomial& m) const;  // multiply by monomial
    Poly pow(unsigned n) const;
    // Make the rank-leading coefficient 1 (zero stays zero).
    Poly monic() const;

    // Plain partial derivative; log atoms are treated as independent variables.
    Poly diff(Var v) const;
    // Coefficients in v, keyed by exponent.
    std::map<int, Poly> coefficients_in(Var v) const;
    // Coefficients with respect to a set of variables, keyed by the monomial in those variables.
    std::unordered_map<Monomial, Poly, MonomialHash> coefficients_in(const std::vector<Var>& vs) const;
    Poly substitute(Var v, const Poly& p) const;  // requires nonnegative exponents of v
    GQ evaluate(const std::function<GQ(Var)>& value) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    std::size_t hash() const;

    // Canonical text, terms in descending rank order.
    std::string str() const;

private:
    std::vector<Term> t_;  // sorted descending by storage order, nonzero coefficients
};

struct PolyHash {
    std::size_t operator()(const Poly& p) const { return p.hash(); }
};

// Exact quotient a/b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
// Greatest common divisor normalized to rank-leading coefficient 1.
Poly gcd(const Poly& a, const Poly& b);
// Squarefree part (product of distinct irreducible factors), monic.
Poly squarefree_part(const Poly& p);
// Exact square root when p is a perfect square.
std::optional<Poly> poly_sqrt(const Poly& p);

}  // namespace jlq
