#include "jlq/lagrange.hpp"

#include "jlq/integrate.hpp"
#include "jlq/linear_solve.hpp"

namespace jlq {

std::vector<Expr> gauge_ansatz(bool with_logs, int bound) {
    Expr t = Expr::variable(vars::t()), q = Expr::variable(vars::q());
    std::vector<Expr> base;
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b) base.push_back(t.pow(a) * q.pow(b));
    std::vector<Expr> out = base;
    if (with_logs) {
        Expr lt = Expr::log(t), lq = Expr::log(q);
        for (auto& m : base) out.push_back(m * lt);
        for (auto& m : base) out.push_back(m * lq);
    }
    return out;
}

Expr euler_lagrange_residual(const Expr& l) {
    return -total_derivative_free(diff(l, vars::qd())) + diff(l, vars::q());
}

bool euler_lagrange_consistent(const Expr& l, const Ode2& ode) {
    Expr m = diff(l, vars::qd(), 2);
    if (m.is_zero()) return false;
    Expr r = euler_lagrange_residual(l) + m * (Expr::variable(vars::qdd()) - ode.rhs);
    return r.is_zero();
}

Lagrangian lagrangian_from_multiplier(const Ode2& ode, const Multiplier& m, int gauge_bound) {
    Var qd = vars::qd();
    Expr l0 = integrate_power(integrate_power(m.m, qd), qd);
    // EL(L0) + M (qdd - F) depends on (t, q) only when M is a multiplier; the
    // terms f1 qd + f3 add f3_q - f1_t to it.
    Expr r = euler_lagrange_residual(l0) + m.m * (Expr::variable(vars::qdd()) - ode.rhs);
    if (r.depends_on(qd) || r.depends_on(vars::qdd()))
        throw AnsatzInsufficient("Euler-Lagrange remainder depends on qd; is " + m.m.str() + " a multiplier?", r);
    Lagrangian out{l0, Expr(), Expr(), m.m, m.provenance};
    if (r.is_zero()) return out;
    auto basis = gauge_ansatz(l0.has_log_atoms() || r.has_log_atoms(), gauge_bound);
    std::vector<std::vector<Expr>> cols;
    for (auto& f : basis) cols.push_back({-diff(f, vars::t())});
    for (auto& f : basis) cols.push_back({diff(f, vars::q())});
    // f3_q - f1_t = -r
    auto c = constant_combination(cols, {-r});
    if (!c) throw AnsatzInsufficient("no f1, f3 in the ansatz satisfy f3_q - f1_t = " + (-r).str(), r);
    std::size_t n = basis.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (!(*c)[j].is_zero()) out.f1 += Expr((*c)[j]) * basis[j];
        if (!(*c)[n + j].is_zero()) out.f3 += Expr((*c)[n + j]) * basis[j];
    }
    out.l = l0 + out.f1 * Expr::variable(qd) + out.f3;
    if (!euler_lagrange_consistent(out.l, ode)) throw std::logic_error("reconstructed Lagrangian fails the Euler-Lagrange check");
    return out;
}

Lagrangian lagrangian_from_expr(const Expr& l, std::string provenance) {
    return {l, Expr(), Expr(), diff(l, vars::qd(), 2), std::move(provenance)};
}

bool gauge_equivalent(const Expr& l1, const Expr& l2) {
    Expr d = l1 - l2;
    Expr b = diff(d, vars::qd());
    if (b.depends_on(vars::qd())) return false;
    Expr a = d - b * Expr::variable(vars::qd());
    if (a.depends_on(vars::qd())) return false;
    return (diff(b, vars::t()) - diff(a, vars::q())).is_zero();
}

std::optional<GQ> gauge_equivalent_up_to_constant(const Expr& l1, const Expr& l2) {
    auto c = constant_ratio(diff(l1, vars::qd(), 2), diff(l2, vars::qd(), 2));
    if (!c || !gauge_equivalent(l1, Expr(*c) * l2)) return std::nullopt;
    return c;
}

StraighteningCheck canonical_straightening_check(const PointSymmetry& s1, const PointSymmetry& s2, const Expr& tnew,
                                                 const Expr& xnew, const Ode2& ode,
                                                 const std::optional<Expr>& target_rhs) {
    Var t = vars::t(), q = vars::q();
    Expr jac = diff(tnew, t) * diff(xnew, q) - diff(tnew, q) * diff(xnew, t);
    if (jac.is_zero()) throw std::invalid_argument("degenerate change of variables");
    StraighteningCheck r;
    r.s1_t = apply_field(s1, tnew);
    r.s1_x = apply_field(s1, xnew);
    r.s2_t = apply_field(s2, tnew);
    r.s2_x = apply_field(s2, xnew);
    r.straightens = r.s1_t == Expr(1) && r.s1_x.is_zero() && r.s2_t.is_zero() && r.s2_x == Expr(1);
    Expr dT = total_derivative(tnew, ode);
    Expr p = total_derivative(xnew, ode) / dT;
    r.transformed = total_derivative(p, ode) / dT;
    if (target_rhs) {
        Expr pushed = substitute(*target_rhs, Bindings{{t, tnew}, {q, xnew}, {vars::qd(), p}});
        r.target_matches = (r.transformed - pushed).is_zero();
    }
    r.ok = r.straightens && r.target_matches;
    return r;
}

}  // namespace jlq
