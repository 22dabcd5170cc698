#pragma once

#include "jlq/polynomial.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace jlq {

// Canonical rational function num/den over Q(i) in variables and log atoms.
// num and den are coprime, den has rank-leading coefficient 1, and no
// negative exponents occur. Structural equality is mathematical equality
// within the rational-plus-log-atom class.
class Expr {
public:
    Expr();
    Expr(const GQ& c);
    Expr(long c) : Expr(GQ(c)) {}
    explicit Expr(const Poly& p);
    static Expr variable(Var v);
    static Expr variable(std::string_view name) { return variable(sym(name)); }
    static Expr fraction(const Poly& num, const Poly& den);
    static Expr rational(long n, long d) { return Expr(GQ::frac(n, d)); }
    static Expr imaginary_unit() { return Expr(GQ::i()); }
    // log(arg); throws std::domain_error for arg = 0, returns 0 for arg = 1.
    static Expr log(const Expr& arg);

    const Poly& num() const { return rep_->num; }
    const Poly& den() const { return rep_->den; }

    bool is_zero() const { return num().is_zero(); }
    bool is_constant() const { return num().is_constant() && den().is_constant(); }
    GQ constant_value() const;  // requires is_constant()
    bool is_polynomial() const { return den().is_constant(); }
    // Variables occurring directly (log atoms count as variables).
    std::vector<Var> variables() const;
    // True when the value depends on v, also through log-atom arguments.
    bool depends_on(Var v) const;
    bool has_log_atoms() const;

    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr pow(int n) const;
    Expr inverse() const;

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.rep_ == b.rep_ || (a.num() == b.num() && a.den() == b.den());
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
    std::size_t hash() const { return num().hash() * 31 + den().hash(); }

    // Canonical text; parse(str()) reproduces the same Expr.
    std::string str() const;

private:
    struct Rep {
        Poly num;
        Poly den;
    };
    explicit Expr(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    static Expr make_canonical(Poly num, Poly den);
    std::shared_ptr<const Rep> rep_;
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

using Bindings = std::map<Var, Expr>;

Expr diff(const Expr& e, Var v);
Expr diff(const Expr& e, Var v, int times);
// Simultaneous substitution; log atoms have their arguments substituted.
Expr substitute(const Expr& e, const Bindings& b);
Expr substitute(const Expr& e, Var v, const Expr& value);
// Exact evaluation; log atoms are looked up through `value` like variables.
// Throws std::domain_error at a pole.
GQ evaluate(const Expr& e, const std::function<GQ(Var)>& value);
inline bool is_zero(const Expr& e) { return e.is_zero(); }
// The canonical form is maintained eagerly, so this is the identity.
inline Expr normalize(const Expr& e) { return e; }
// Ratio a/b when it is a nonzero constant.
std::optional<GQ> constant_ratio(const Expr& a, const Expr& b);
// Partial derivative of a polynomial including chain-rule terms of log atoms.
Expr diff_poly(const Poly& p, Var v);

}  // namespace jlq
