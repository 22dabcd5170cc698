#include "jlq/integrate.hpp"
#include "jlq/quantizer.hpp"

namespace jlq {

namespace {

using S = LinearPde2;

const Var T = vars::t();
const Var X = vars::x();
const Var XI = vars::xi();

// p = a(t) * b(x), or nullopt
std::optional<std::pair<Poly, Poly>> separate(const Poly& p) {
    for (Var v : p.variables())
        if (v != T && v != X) return std::nullopt;
    Poly g;
    for (auto& [k, c] : p.coefficients_in(X)) {
        g = g.is_zero() ? c : gcd(g, c);
        if (g.is_constant()) break;
    }
    auto rest = divide_exact(p, g);
    if (!rest || rest->has_var(T)) return std::nullopt;
    return std::make_pair(g, *rest);
}

// sum n_i log(a_i) with integer n_i -> prod a_i^n_i
std::optional<Expr> exponentiate_logs(const Expr& e) {
    if (!e.is_polynomial() || e.is_zero()) return std::nullopt;
    Expr out(1);
    for (auto& term : e.num().terms()) {
        if (term.m.is_one()) continue;  // additive constants do not matter
        auto& f = term.m.factors();
        if (f.size() != 1 || f[0].second != 1 || !is_log_atom(f[0].first) || !term.c.is_integer()) return std::nullopt;
        out = out * log_argument(f[0].first).pow(static_cast<int>(term.c.re().get_num().get_si()));
    }
    return out;
}

Expr oriented(const Expr& xi) {
    Expr d = diff(xi, X);
    if (!d.is_zero() && d.num().rank_lead().c.sign() < 0) return -xi;
    return xi;
}

// rescale polynomials jointly: coprime, rational content removed, first nonzero lead positive
std::vector<Expr> cleared(const std::vector<Expr>& es) {
    Poly l(1);
    for (auto& e : es) {
        if (e.is_zero() || e.is_polynomial()) continue;
        l = l * *divide_exact(e.den(), gcd(l, e.den()));
    }
    std::vector<Poly> p;
    Poly g;
    for (auto& e : es) {
        p.push_back(e.is_zero() ? Poly() : e.num() * *divide_exact(l, e.den()));
        if (!p.back().is_zero()) g = g.is_zero() ? p.back() : gcd(g, p.back());
    }
    mpz_class num_g = 0, den_l = 1;
    bool real = true;
    for (auto& q : p) {
        if (!q.is_zero() && !g.is_constant()) q = *divide_exact(q, g);
        for (auto& term : q.terms()) {
            if (!term.c.is_real()) real = false;
            const mpq_class& r = term.c.is_real() ? term.c.re() : term.c.im();
            mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), r.get_num_mpz_t());
            mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), r.get_den_mpz_t());
        }
    }
    GQ scale(1);
    if (real && num_g != 0) scale = GQ(mpq_class(den_l, num_g));
    for (auto& q : p)
        if (!q.is_zero()) {
            if (q.rank_lead().c.sign() < 0) scale = -scale;
            break;
        }
    std::vector<Expr> out;
    for (auto& q : p) out.push_back(Expr(q.scaled(scale)));
    return out;
}

Expr sqrt_expr(const Expr& e) {
    auto n = poly_sqrt(e.num());
    auto d = poly_sqrt(e.den());
    if (!n || !d) return Expr();
    Poly rn = *n;
    if (!rn.is_zero() && rn.rank_lead().c.sign() < 0) rn = -rn;
    return Expr::fraction(rn, *d);
}

std::string exponent_str(const Expr& r) {
    std::string s = r.str();
    if (r.is_constant() && r.constant_value().is_integer() && r.constant_value().sign() >= 0) return s;
    return "(" + s + ")";
}

}  // namespace

bool verify_characteristic(const LinearPde2& pde, const Expr& xi) {
    Expr xt = diff(xi, T), xx = diff(xi, X);
    if (xt.is_zero() && xx.is_zero()) return false;
    return (pde.c[S::tt] * xt * xt + pde.c[S::tx] * xt * xx + pde.c[S::xx] * xx * xx).is_zero();
}

Expr characteristic_coordinate(const LinearPde2& pde) {
    pde.validate();
    if (classify(pde) != PdeClass::parabolic) throw std::invalid_argument("equation is not parabolic");
    if (pde.c[S::tt].is_zero()) return Expr::variable(T);
    if (pde.c[S::tx].is_zero()) return Expr::variable(X);
    // dx/dt = c_tx / (2 c_tt)
    Expr f = pde.c[S::tx] / (2 * pde.c[S::tt]);
    auto n = separate(f.num());
    auto d = separate(f.den());
    if (!n || !d) throw NonSeparable("dx/dt = " + f.str() + " does not separate as r(t)*s(x)");
    Expr r = Expr::fraction(n->first, d->first);
    Expr s = Expr::fraction(n->second, d->second);
    Expr xi;
    try {
        xi = integrate_power(s.inverse(), X) - integrate_power(r, T);
    } catch (const UnsupportedIntegrand& e) {
        throw NonSeparable(std::string("characteristic quadrature: ") + e.what());
    }
    if (auto p = exponentiate_logs(xi)) xi = *p;
    xi = oriented(xi);
    if (!verify_characteristic(pde, xi)) throw std::logic_error("characteristic coordinate fails verification: " + xi.str());
    return xi;
}

CharReduction to_normal_form(const LinearPde2& pde, const Expr& xi) {
    if (!verify_characteristic(pde, xi)) throw std::invalid_argument(xi.str() + " is not a characteristic coordinate");
    Expr xt = diff(xi, T), xx = diff(xi, X);
    if (xt.is_zero()) throw std::invalid_argument("characteristic coordinate does not involve t; the equation is already in normal form in t");
    if (xi.has_log_atoms()) throw std::invalid_argument("cannot invert " + xi.str() + " for t");
    // xi = (a t + b) / (c t + d)
    const Poly& nu = xi.num();
    const Poly& de = xi.den();
    if (nu.degree(T) > 1 || de.degree(T) > 1) throw std::invalid_argument("cannot invert " + xi.str() + " for t");
    auto coef = [](const Poly& p, int k) {
        auto cs = p.coefficients_in(T);
        auto it = cs.find(k);
        return it == cs.end() ? Expr() : Expr(it->second);
    };
    Expr a = coef(nu, 1), b = coef(nu, 0), c = coef(de, 1), d = coef(de, 0);
    Expr v = Expr::variable(XI);
    Expr tinv = (b - v * d) / (v * c - a);
    Bindings back{{T, tinv}};

    const auto& k = pde.c;
    Expr mixed = k[S::tx] * xt + 2 * k[S::xx] * xx;
    if (!mixed.is_zero()) throw std::logic_error("mixed derivative survives the reduction");
    Expr e_xi = k[S::tt] * diff(xi, T, 2) + k[S::tx] * diff(diff(xi, T), X) + k[S::xx] * diff(xi, X, 2) + k[S::t] * xt +
                k[S::x] * xx;
    auto r = cleared({substitute(k[S::xx], back), substitute(k[S::x], back), substitute(k[S::zero], back),
                      substitute(e_xi, back)});
    CharReduction out;
    out.xi = xi;
    out.phi_xx = r[0];
    out.phi_x = r[1];
    out.phi = r[2];
    out.phi_xi = r[3];
    return out;
}

std::string CharReduction::str() const {
    return linear_form({{phi_xx, "phi_xx"}, {phi_xi, "phi_xi"}, {phi_x, "phi_x"}, {phi, "phi"}});
}

EulerSolution solve_euler(const CharReduction& red) {
    EulerSolution s;
    if (!red.phi_xi.is_zero() || red.phi_xx.is_zero()) return s;
    Expr x = Expr::variable(X);
    s.a = red.phi_xx / (x * x);
    s.b = red.phi_x / x;
    s.c = red.phi;
    for (auto* e : {&s.a, &s.b, &s.c})
        if (e->depends_on(X) || e->depends_on(T)) return s;
    s.euler = true;
    Expr bm = s.b - s.a;
    Expr disc = bm * bm - 4 * s.a * s.c;
    if (disc.is_zero()) {
        s.closed = true;
        s.repeated = true;
        s.exponents = {-bm / (2 * s.a)};
        return s;
    }
    Expr root = sqrt_expr(disc);
    if (root.is_zero()) return s;
    s.closed = true;
    s.exponents = {(-bm + root) / (2 * s.a), (-bm - root) / (2 * s.a)};
    return s;
}

std::string EulerSolution::basis() const {
    if (!closed) return "";
    const std::string p = "x^" + exponent_str(exponents[0]);
    if (repeated) return "alpha1(xi)*" + p + " + alpha2(xi)*" + p + "*log(x)";
    return "alpha1(xi)*" + p + " + alpha2(xi)*x^" + exponent_str(exponents[1]);
}

bool back_substitution_check(const LinearPde2& pde, const CharReduction& red, const EulerSolution& sol) {
    if (!sol.closed) return false;
    const auto& k = pde.c;
    Expr logx = Expr::log(Expr::variable(X));
    Expr logxi = Expr::log(red.xi);
    auto annihilated = [&](const Expr& phi) {
        Expr pt = diff(phi, T), px = diff(phi, X);
        Expr v = k[S::tt] * (diff(pt, T) + pt * pt) + k[S::tx] * (diff(pt, X) + pt * px) +
                 k[S::xx] * (diff(px, X) + px * px) + k[S::t] * pt + k[S::x] * px + k[S::zero];
        return v.is_zero();
    };
    Bindings at{{XI, red.xi}};
    for (auto& r : sol.exponents) {
        Expr base = substitute(r, at) * logx;
        std::vector<Expr> forms{base};
        if (sol.repeated) forms.push_back(base + Expr::log(logx));
        for (auto& f : forms)
            for (int h = 0; h <= 2; ++h)
                if (!annihilated(f + h * logxi)) return false;
    }
    return true;
}

}  // namespace jlq
