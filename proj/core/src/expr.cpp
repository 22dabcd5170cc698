#include "jlq/expr.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace jlq {

Expr::Expr() : Expr(GQ(0)) {}

Expr::Expr(const GQ& c) : rep_(std::make_shared<const Rep>(Rep{Poly(c), Poly(1)})) {}

Expr::Expr(const Poly& p) {
    *this = make_canonical(p, Poly(1));
}

Expr Expr::variable(Var v) { return Expr(std::make_shared<const Rep>(Rep{Poly::variable(v), Poly(1)})); }

Expr Expr::fraction(const Poly& num, const Poly& den) { return make_canonical(num, den); }

Expr Expr::make_canonical(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("division by zero");
    if (num.is_zero()) return Expr();
    // clear negative exponents
    if (num.has_negative_exponent() || den.has_negative_exponent()) {
        std::vector<Monomial::Factor> shift;
        auto vs = num.variables();
        auto vd = den.variables();
        vs.insert(vs.end(), vd.begin(), vd.end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        for (Var v : vs) {
            int m = std::min(num.has_var(v) ? num.min_degree(v) : 0, den.has_var(v) ? den.min_degree(v) : 0);
            if (m < 0) shift.emplace_back(v, -m);
        }
        Monomial sm(std::move(shift));
        num = num.shifted(sm);
        den = den.shifted(sm);
    }
    if (den.is_constant()) {
        GQ c = den.constant_value();
        return Expr(std::make_shared<const Rep>(Rep{num.scaled(c.inverse()), Poly(1)}));
    }
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
        num = *divide_exact(num, g);
        den = *divide_exact(den, g);
    }
    GQ c = den.rank_lead().c;
    if (!c.is_one()) {
        GQ ci = c.inverse();
        num = num.scaled(ci);
        den = den.scaled(ci);
    }
    return Expr(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)}));
}

Expr Expr::log(const Expr& arg) {
    if (arg.is_zero()) throw std::domain_error("log of zero");
    if (arg.is_constant() && arg.constant_value().is_one()) return Expr();
    return variable(log_atom(arg));
}

GQ Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("expression is not constant: " + str());
    return num().constant_value() / den().constant_value();
}

std::vector<Var> Expr::variables() const {
    auto a = num().variables();
    auto b = den().variables();
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool Expr::depends_on(Var v) const {
    for (Var w : variables()) {
        if (w == v) return true;
        if (is_log_atom(w) && log_argument(w).depends_on(v)) return true;
    }
    return false;
}

bool Expr::has_log_atoms() const {
    for (Var w : variables())
        if (is_log_atom(w)) return true;
    return false;
}

Expr Expr::operator-() const { return Expr(std::make_shared<const Rep>(Rep{-num(), den()})); }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_polynomial() && b.is_polynomial())
        return Expr(std::make_shared<const Expr::Rep>(Expr::Rep{a.num() + b.num(), Poly(1)}));
    if (a.den() == b.den()) return Expr::make_canonical(a.num() + b.num(), a.den());
    if (a.is_polynomial()) return Expr::make_canonical(a.num() * b.den() + b.num(), b.den());
    if (b.is_polynomial()) return Expr::make_canonical(a.num() + b.num() * a.den(), a.den());
    Poly g = gcd(a.den(), b.den());
    Poly da = *divide_exact(a.den(), g);
    Poly db = *divide_exact(b.den(), g);
    return Expr::make_canonical(a.num() * db + b.num() * da, a.den() * db);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_constant()) {
        GQ c = a.constant_value();
        if (c.is_one()) return b;
        return Expr(std::make_shared<const Expr::Rep>(Expr::Rep{b.num().scaled(c), b.den()}));
    }
    if (b.is_constant()) return b * a;
    if (a.is_polynomial() && b.is_polynomial())
        return Expr(std::make_shared<const Expr::Rep>(Expr::Rep{a.num() * b.num(), Poly(1)}));
    Poly g1 = gcd(a.num(), b.den());
    Poly g2 = gcd(b.num(), a.den());
    Poly n1 = *divide_exact(a.num(), g1), d2 = *divide_exact(b.den(), g1);
    Poly n2 = *divide_exact(b.num(), g2), d1 = *divide_exact(a.den(), g2);
    Poly n = n1 * n2, d = d1 * d2;
    GQ c = d.is_constant() ? d.constant_value() : d.rank_lead().c;
    if (!c.is_one()) {
        n = n.scaled(c.inverse());
        d = d.scaled(c.inverse());
    }
    return Expr(std::make_shared<const Expr::Rep>(Expr::Rep{std::move(n), std::move(d)}));
}

Expr Expr::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Poly n = den(), d = num();
    GQ c = d.is_constant() ? d.constant_value() : d.rank_lead().c;
    if (!c.is_one()) {
        n = n.scaled(c.inverse());
        d = d.scaled(c.inverse());
    }
    if (d.is_constant()) d = Poly(1);
    return Expr(std::make_shared<const Rep>(Rep{std::move(n), std::move(d)}));
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(int n) const {
    if (n == 0) return Expr(1);
    if (n < 0) return inverse().pow(-n);
    if (n == 1) return *this;
    return Expr(std::make_shared<const Rep>(Rep{num().pow(static_cast<unsigned>(n)), den().pow(static_cast<unsigned>(n))}));
}

std::string Expr::str() const {
    if (is_polynomial()) return num().str();
    std::string n = num().str();
    bool simple_num = num().size() == 1 && !(num().lead().c.is_compound());
    if (!simple_num) n = "(" + n + ")";
    bool simple_den = den().size() == 1 && den().lead().c.is_one() && den().lead().m.factors().size() == 1;
    std::string d = den().str();
    if (!simple_den) d = "(" + d + ")";
    return n + "/" + d;
}

Expr diff_poly(const Poly& p, Var v) {
    Expr r(p.diff(v));
    for (Var a : p.variables()) {
        if (a == v || !is_log_atom(a)) continue;
        const Expr& arg = log_argument(a);
        if (!arg.depends_on(v)) continue;
        r += Expr(p.diff(a)) * diff(arg, v) / arg;
    }
    return r;
}

Expr diff(const Expr& e, Var v) {
    if (!e.depends_on(v)) return Expr();
    Expr dn = diff_poly(e.num(), v);
    if (e.is_polynomial()) return dn;
    Expr dd = diff_poly(e.den(), v);
    Expr den(e.den());
    if (dd.is_zero()) return dn / den;
    return (dn - e * dd) / den;
}

Expr diff(const Expr& e, Var v, int times) {
    Expr r = e;
    for (int k = 0; k < times; ++k) r = diff(r, v);
    return r;
}

namespace {
Expr substitute_poly(const Poly& p, const std::unordered_map<Var, Expr>& vals) {
    bool all_poly = true;
    for (auto& [v, e] : vals)
        if (!e.is_polynomial()) all_poly = false;
    if (all_poly) {
        Poly r;
        std::unordered_map<Var, std::map<int, Poly>> powers;
        for (auto& t : p.terms()) {
            Poly term(t.c);
            Monomial rest;
            for (auto& [v, e] : t.m.factors()) {
                auto it = vals.find(v);
                if (it == vals.end()) {
                    rest = rest * Monomial::of(v, e);
                    continue;
                }
                auto& cache = powers[v];
                auto pit = cache.find(e);
                if (pit == cache.end()) pit = cache.emplace(e, it->second.num().pow(static_cast<unsigned>(e))).first;
                term = term * pit->second;
            }
            r += term.shifted(rest);
        }
        return Expr(r);
    }
    Expr r;
    std::unordered_map<Var, std::map<int, Expr>> powers;
    for (auto& t : p.terms()) {
        Expr term(t.c);
        Monomial rest;
        for (auto& [v, e] : t.m.factors()) {
            auto it = vals.find(v);
            if (it == vals.end()) {
                rest = rest * Monomial::of(v, e);
                continue;
            }
            auto& cache = powers[v];
            auto pit = cache.find(e);
            if (pit == cache.end()) pit = cache.emplace(e, it->second.pow(e)).first;
            term = term * pit->second;
        }
        r += term * Expr(Poly::monomial(rest));
    }
    return r;
}
}  // namespace

Expr substitute(const Expr& e, const Bindings& b) {
    if (b.empty()) return e;
    std::unordered_map<Var, Expr> vals;
    for (Var v : e.variables()) {
        auto it = b.find(v);
        if (it != b.end()) {
            vals.emplace(v, it->second);
        } else if (is_log_atom(v)) {
            const Expr& arg = log_argument(v);
            Expr na = substitute(arg, b);
            if (na != arg) {
                if (na.is_zero()) throw std::domain_error("substitution produces log of zero: log(" + arg.str() + ")");
                vals.emplace(v, Expr::log(na));
            }
        }
    }
    if (vals.empty()) return e;
    Expr n = substitute_poly(e.num(), vals);
    if (e.is_polynomial()) return n;
    Expr d = substitute_poly(e.den(), vals);
    if (d.is_zero()) throw std::domain_error("substitution makes denominator vanish: " + e.den().str());
    return n / d;
}

Expr substitute(const Expr& e, Var v, const Expr& value) { return substitute(e, Bindings{{v, value}}); }

GQ evaluate(const Expr& e, const std::function<GQ(Var)>& value) {
    GQ d = e.den().evaluate(value);
    if (d.is_zero()) throw std::domain_error("evaluation at a pole");
    return e.num().evaluate(value) / d;
}

std::optional<GQ> constant_ratio(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    Expr r = a / b;
    if (!r.is_constant()) return std::nullopt;
    return r.constant_value();
}

}  // namespace jlq
