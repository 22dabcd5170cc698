#include "jlq/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace jlq {

namespace {

using Uni = std::vector<Poly>;  // coefficient of v^k at index k

Uni to_uni(const Poly& p, Var v) {
    auto cs = p.coefficients_in(v);
    Uni u(static_cast<std::size_t>(cs.rbegin()->first) + 1);
    for (auto& [k, c] : cs) u[static_cast<std::size_t>(k)] = c;
    return u;
}

Poly from_uni(const Uni& u, Var v) {
    Poly r;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (!u[k].is_zero()) r += u[k].shifted(Monomial::of(v, static_cast<int>(k)));
    return r;
}

void trim(Uni& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int deg(const Uni& u) { return static_cast<int>(u.size()) - 1; }

Poly content(const Uni& u) {
    Poly g;
    for (auto& c : u) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Uni divide_coeffs(const Uni& u, const Poly& c) {
    if (c.is_constant() && c.constant_value().is_one()) return u;
    Uni r(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        auto q = divide_exact(u[k], c);
        if (!q) throw std::logic_error("content does not divide coefficient");
        r[k] = std::move(*q);
    }
    return r;
}

Uni primitive(const Uni& u) { return divide_coeffs(u, content(u)); }

Uni prem(Uni a, const Uni& b) {
    const Poly& lb = b.back();
    int db = deg(b);
    while (deg(a) >= db && !a.empty()) {
        Poly la = a.back();
        int shift = deg(a) - db;
        for (auto& c : a) c = c * lb;
        for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= b[static_cast<std::size_t>(k)] * la;
        trim(a);
    }
    return a;
}

// Content of p with respect to the variables in `extra`.
Poly content_wrt(const Poly& p, const std::vector<Var>& extra) {
    Poly g;
    for (auto& [m, c] : p.coefficients_in(extra)) {
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

}  // namespace

Poly gcd(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();
    if (a0.is_constant() || b0.is_constant()) return Poly(1);
    if (a0.has_negative_exponent() || b0.has_negative_exponent())
        throw std::domain_error("gcd of Laurent polynomials");
    if (a0 == b0) return a0.monic();

    Monomial ma = a0.min_monomial(), mb = b0.min_monomial();
    std::vector<Monomial::Factor> common;
    for (auto& [v, e] : ma.factors()) {
        int f = std::min(e, mb.exponent(v));
        if (f > 0) common.emplace_back(v, f);
    }
    Monomial gm(std::move(common));
    Poly a = a0.shifted(Monomial() / ma);
    Poly b = b0.shifted(Monomial() / mb);
    Poly gmp = Poly::monomial(gm);
    if (a.is_constant() || b.is_constant()) return gmp;

    if (b.size() <= a.size()) {
        if (divide_exact(a, b)) return (gmp * b).monic();
    } else if (divide_exact(b, a)) {
        return (gmp * a).monic();
    }

    auto va = a.variables(), vb = b.variables();
    std::vector<Var> extra_a, extra_b;
    std::set_difference(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(extra_a));
    std::set_difference(vb.begin(), vb.end(), va.begin(), va.end(), std::back_inserter(extra_b));
    if (!extra_a.empty()) return (gmp * gcd(content_wrt(a, extra_a), b)).monic();
    if (!extra_b.empty()) return (gmp * gcd(a, content_wrt(b, extra_b))).monic();

    Var v = va.front();
    int best = -1;
    for (Var w : va) {
        int d = std::max(a.degree(w), b.degree(w));
        if (best < 0 || d < best) {
            best = d;
            v = w;
        }
    }
    Uni ua = to_uni(a, v), ub = to_uni(b, v);
    Poly ca = content(ua), cb = content(ub);
    Poly c = gcd(ca, cb);
    ua = divide_coeffs(ua, ca);
    ub = divide_coeffs(ub, cb);
    if (deg(ua) < deg(ub)) std::swap(ua, ub);
    Uni g;
    while (true) {
        if (deg(ub) == 0) {
            g = Uni{Poly(1)};
            break;
        }
        Uni r = prem(ua, ub);
        if (r.empty()) {
            g = ub;
            break;
        }
        ua = std::move(ub);
        ub = primitive(r);
    }
    return (gmp * c * from_uni(g, v)).monic();
}

}  // namespace jlq
