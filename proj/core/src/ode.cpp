#include "jlq/ode.hpp"

#include "jlq/linear_solve.hpp"

#include <stdexcept>

namespace jlq {

namespace {
bool only_vars(const Expr& e, std::initializer_list<Var> allowed) {
    for (Var w : e.variables()) {
        if (is_log_atom(w)) {
            if (!only_vars(log_argument(w), allowed)) return false;
            continue;
        }
        bool ok = false;
        for (Var a : allowed) ok = ok || a == w;
        if (!ok) return false;
    }
    return true;
}
}  // namespace

Ode2::Ode2(Expr f) : rhs(std::move(f)) {
    if (!only_vars(rhs, {vars::t(), vars::q(), vars::qd()}))
        throw std::invalid_argument("ODE right-hand side may only involve t, q, qd: " + rhs.str());
}

PointSymmetry::PointSymmetry(Expr v_, Expr g_, std::string label_)
    : v(std::move(v_)), g(std::move(g_)), label(std::move(label_)) {
    if (!only_vars(v, {vars::t(), vars::q()}) || !only_vars(g, {vars::t(), vars::q()}))
        throw std::invalid_argument("symmetry components must be functions of t and q");
}

Expr total_derivative(const Expr& e, const Ode2& ode) {
    Expr r = diff(e, vars::t()) + Expr::variable(vars::qd()) * diff(e, vars::q());
    if (e.depends_on(vars::qd())) r += ode.rhs * diff(e, vars::qd());
    return r;
}

Expr total_derivative_free(const Expr& e) {
    Expr r = diff(e, vars::t()) + Expr::variable(vars::qd()) * diff(e, vars::q());
    if (e.depends_on(vars::qd())) r += Expr::variable(vars::qdd()) * diff(e, vars::qd());
    return r;
}

ProlongedSymmetry prolong(const PointSymmetry& s, const Ode2&) {
    Expr qd = Expr::variable(vars::qd());
    Expr qdd = Expr::variable(vars::qdd());
    Expr dv = total_derivative_free(s.v);
    Expr eta1 = total_derivative_free(s.g) - qd * dv;
    Expr eta2 = total_derivative_free(eta1) - qdd * dv;
    return {s, eta1, eta2};
}

SymmetryCheck verify_point_symmetry(const PointSymmetry& s, const Ode2& ode) {
    auto p = prolong(s, ode);
    const Expr& f = ode.rhs;
    Expr lhs = substitute(p.eta2, vars::qdd(), f);
    Expr rhs = s.v * diff(f, vars::t()) + s.g * diff(f, vars::q()) + p.eta1 * diff(f, vars::qd());
    Expr r = lhs - rhs;
    return {r.is_zero(), r};
}

std::vector<PointSymmetry> find_point_symmetries(const Ode2& ode, int degree_bound) {
    std::vector<Expr> monos;
    Expr t = Expr::variable(vars::t()), q = Expr::variable(vars::q());
    for (int d = 0; d <= degree_bound; ++d)
        for (int a = d; a >= 0; --a) monos.push_back(t.pow(a) * q.pow(d - a));
    std::vector<PointSymmetry> cand;
    for (auto& m : monos) cand.emplace_back(m, Expr());
    for (auto& m : monos) cand.emplace_back(Expr(), m);
    std::vector<Expr> residuals;
    for (auto& c : cand) residuals.push_back(verify_point_symmetry(c, ode).residual);
    int n = static_cast<int>(cand.size());
    Rref r = rref(identity_rows(residuals), n);
    std::vector<PointSymmetry> out;
    int k = 1;
    for (auto& v : nullspace(r, n)) {
        PointSymmetry s = linear_combination(v, cand, "S" + std::to_string(k++));
        if (!verify_point_symmetry(s, ode).ok) throw std::logic_error("symmetry search produced an invalid generator");
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<std::vector<GQ>> span_coordinates(const std::vector<PointSymmetry>& basis, const PointSymmetry& s) {
    std::vector<std::vector<Expr>> cols;
    for (auto& b : basis) cols.push_back({b.v, b.g});
    auto c = constant_combination(cols, {s.v, s.g});
    if (!c) return std::nullopt;
    // confirm exactly
    PointSymmetry back = linear_combination(*c, basis);
    if (back.v != s.v || back.g != s.g) return std::nullopt;
    return c;
}

PointSymmetry linear_combination(const std::vector<GQ>& c, const std::vector<PointSymmetry>& s, std::string label) {
    Expr v, g;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (c[j].is_zero()) continue;
        v += Expr(c[j]) * s[j].v;
        g += Expr(c[j]) * s[j].g;
    }
    return PointSymmetry(v, g, std::move(label));
}

Expr apply_field(const PointSymmetry& s, const Expr& f) {
    return s.v * diff(f, vars::t()) + s.g * diff(f, vars::q());
}

}  // namespace jlq
