#include "jlq/pde.hpp"

#include <stdexcept>

namespace jlq {

namespace {
const Var T = vars::t();
const Var X = vars::x();

Expr d(const Expr& e, Var v) { return diff(e, v); }
Expr d(const Expr& e, Var v, Var w) { return diff(diff(e, v), w); }
}  // namespace

const char* LinearPde2::slot_name(int k) {
    static const char* names[] = {"psi_tt", "psi_tx", "psi_xx", "psi_t", "psi_x", "psi"};
    return names[k];
}

void LinearPde2::validate() const {
    if (c[tt].is_zero() && c[tx].is_zero() && c[xx].is_zero())
        throw std::invalid_argument("second-order part of the equation vanishes");
    for (auto& e : c)
        for (Var v : e.variables())
            if (v != T && v != X && !is_log_atom(v)) throw std::invalid_argument("coefficient depends on " + sym_name(v));
}

LinearPde2 LinearPde2::cleared() const {
    Poly l(1);
    for (auto& e : c) {
        if (e.is_zero() || e.is_polynomial()) continue;
        Poly g = gcd(l, e.den());
        l = l * *divide_exact(e.den(), g);
    }
    std::array<Poly, 6> p;
    for (int k = 0; k < 6; ++k)
        if (!c[k].is_zero()) p[k] = c[k].num() * *divide_exact(l, c[k].den());
    // rational content over all coefficients
    mpz_class num_g = 0, den_l = 1;
    bool real = true;
    for (auto& q : p)
        for (auto& term : q.terms()) {
            if (!term.c.is_real()) real = false;
            const mpq_class& r = term.c.is_real() ? term.c.re() : term.c.im();
            mpz_gcd(num_g.get_mpz_t(), num_g.get_mpz_t(), r.get_num_mpz_t());
            mpz_lcm(den_l.get_mpz_t(), den_l.get_mpz_t(), r.get_den_mpz_t());
        }
    LinearPde2 out = *this;
    GQ scale(1);
    if (real && num_g != 0) scale = GQ(mpq_class(den_l, num_g));
    for (int k = 0; k < 6; ++k) {
        if (p[k].is_zero()) continue;
        scale = scale * GQ(p[k].rank_lead().c.sign() < 0 ? -1 : 1);
        break;
    }
    for (int k = 0; k < 6; ++k) out.c[k] = Expr(p[k].scaled(scale));
    return out;
}

LinearPde2 LinearPde2::normalized() const {
    LinearPde2 out = *this;
    for (int k = 0; k < 3; ++k) {
        if (c[k].is_zero()) continue;
        Expr s = c[k];
        for (auto& e : out.c) e = e / s;
        return out;
    }
    throw std::invalid_argument("second-order part of the equation vanishes");
}

std::string linear_form(const std::vector<std::pair<Expr, std::string>>& terms) {
    std::string out;
    for (auto& [c, name] : terms) {
        if (c.is_zero()) continue;
        std::string s = c.str();
        bool neg = false;
        if (!s.empty() && s[0] == '-' && c.num().size() == 1) {
            neg = true;
            s = (-c).str();
        }
        bool compound = c.num().size() > 1 || (c.is_constant() && c.constant_value().is_compound());
        if (compound) s = "(" + s + ")";
        std::string term = s == "1" ? name : s + "*" + name;
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return (out.empty() ? "0" : out) + " = 0";
}

std::string LinearPde2::str() const {
    std::vector<std::pair<Expr, std::string>> terms;
    if (schrodinger_mode) terms.emplace_back(c[t], slot_name(t));
    for (int k = 0; k < 6; ++k)
        if (!(schrodinger_mode && k == t)) terms.emplace_back(c[k], slot_name(k));
    return linear_form(terms);
}

PdeSymmetry lift(const PointSymmetry& s, std::string label) {
    Bindings b{{vars::q(), Expr::variable(X)}};
    return {substitute(s.v, b), substitute(s.g, b), Expr(), label.empty() ? s.label : std::move(label)};
}

std::array<Expr, 6> prolonged_coefficients(const std::array<Expr, 6>& c, const Expr& tau, const Expr& xi,
                                           const Expr& lam) {
    using S = LinearPde2;
    std::array<Expr, 6> out;
    auto field = [&](const Expr& f) { return tau * d(f, T) + xi * d(f, X); };
    for (int k = 0; k < 6; ++k) out[k] = field(c[k]);
    // eta coefficients of eta = lam psi, by derivative slot
    auto add = [&](const Expr& coef, std::initializer_list<std::pair<int, Expr>> eta) {
        if (coef.is_zero()) return;
        for (auto& [k, v] : eta)
            if (!v.is_zero()) out[k] += coef * v;
    };
    add(c[S::tt], {{S::tt, lam - 2 * d(tau, T)}, {S::tx, -2 * d(xi, T)}, {S::t, 2 * d(lam, T) - d(tau, T, T)},
                   {S::x, -d(xi, T, T)}, {S::zero, d(lam, T, T)}});
    add(c[S::tx], {{S::tt, -d(tau, X)}, {S::tx, lam - d(tau, T) - d(xi, X)}, {S::xx, -d(xi, T)},
                   {S::t, d(lam, X) - d(tau, T, X)}, {S::x, d(lam, T) - d(xi, T, X)}, {S::zero, d(lam, T, X)}});
    add(c[S::xx], {{S::tx, -2 * d(tau, X)}, {S::xx, lam - 2 * d(xi, X)}, {S::t, -d(tau, X, X)},
                   {S::x, 2 * d(lam, X) - d(xi, X, X)}, {S::zero, d(lam, X, X)}});
    add(c[S::t], {{S::t, lam - d(tau, T)}, {S::x, -d(xi, T)}, {S::zero, d(lam, T)}});
    add(c[S::x], {{S::t, -d(tau, X)}, {S::x, lam - d(xi, X)}, {S::zero, d(lam, X)}});
    add(c[S::zero], {{S::zero, lam}});
    return out;
}

int pivot_slot(const LinearPde2& pde) {
    if (pde.schrodinger_mode) return LinearPde2::t;
    for (int k = 0; k < 3; ++k)
        if (!pde.c[k].is_zero()) return k;
    return -1;
}

std::map<std::string, Expr> pde_symmetry_residual(const LinearPde2& pde, const PdeSymmetry& s) {
    int p = pivot_slot(pde);
    if (p < 0 || pde.c[p].is_zero())
        throw std::invalid_argument(std::string("cannot eliminate ") + (p < 0 ? "a second derivative" : LinearPde2::slot_name(p)) +
                                    ": its coefficient is zero");
    auto k = prolonged_coefficients(pde.c, s.xi_t, s.xi_x, s.lam);
    Expr mu = k[p] / pde.c[p];
    std::map<std::string, Expr> out;
    for (int j = 0; j < 6; ++j)
        if (j != p) out[LinearPde2::slot_name(j)] = k[j] - mu * pde.c[j];
    return out;
}

bool is_pde_symmetry(const LinearPde2& pde, const PdeSymmetry& s) {
    for (auto& [k, v] : pde_symmetry_residual(pde, s))
        if (!v.is_zero()) return false;
    return true;
}

const char* class_name(PdeClass c) {
    switch (c) {
        case PdeClass::elliptic: return "elliptic";
        case PdeClass::parabolic: return "parabolic";
        case PdeClass::hyperbolic: return "hyperbolic";
        case PdeClass::degenerate_varying: return "degenerate-varying";
    }
    return "";
}

Expr discriminant(const LinearPde2& pde) {
    using S = LinearPde2;
    return pde.c[S::tx] * pde.c[S::tx] - 4 * pde.c[S::tt] * pde.c[S::xx];
}

PdeClass classify(const LinearPde2& pde) {
    Expr disc = discriminant(pde);
    if (disc.is_zero()) return PdeClass::parabolic;
    if (disc.is_constant()) {
        GQ v = disc.constant_value();
        if (!v.is_real()) return PdeClass::degenerate_varying;
        return v.sign() > 0 ? PdeClass::hyperbolic : PdeClass::elliptic;
    }
    // a nonzero square (or minus a square) has a fixed sign wherever it is nonzero
    bool real = true;
    for (auto* p : {&disc.num(), &disc.den()})
        for (auto& term : p->terms()) real = real && term.c.is_real();
    if (real && poly_sqrt(disc.den())) {
        if (poly_sqrt(disc.num())) return PdeClass::hyperbolic;
        if (poly_sqrt(-disc.num())) return PdeClass::elliptic;
    }
    return PdeClass::degenerate_varying;
}

Expr apply_operator(const LinearPde2& pde, const Expr& f) {
    using S = LinearPde2;
    const auto& c = pde.c;
    return c[S::tt] * d(f, T, T) + c[S::tx] * d(f, T, X) + c[S::xx] * d(f, X, X) + c[S::t] * d(f, T) + c[S::x] * d(f, X) +
           c[S::zero] * f;
}

}  // namespace jlq
