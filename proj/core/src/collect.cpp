#include "jlq/collect.hpp"

#include <algorithm>

namespace jlq {

namespace {
bool listed(const std::vector<Var>& vs, Var v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }
}  // namespace

CoeffMap collect_coefficients(const Expr& e, const std::vector<Var>& vars) {
    for (Var v : vars)
        for (Var w : e.den().variables())
            if (w == v || (is_log_atom(w) && !listed(vars, w) && log_argument(w).depends_on(v)))
                throw NotPolynomial("not polynomial in " + sym_name(v) + ": " + e.str());
    for (Var w : e.num().variables()) {
        if (!is_log_atom(w) || listed(vars, w)) continue;
        for (Var v : vars)
            if (log_argument(w).depends_on(v))
                throw NotPolynomial("coefficient " + sym_name(w) + " depends on " + sym_name(v));
    }
    CoeffMap out;
    Expr den(e.den());
    for (auto& [m, c] : e.num().coefficients_in(vars)) {
        if (m.has_negative()) throw NotPolynomial("negative power in " + e.str());
        out.emplace(m, Expr::fraction(c, e.den()));
    }
    return out;
}

Expr coefficient(const CoeffMap& m, const Monomial& mono) {
    auto it = m.find(mono);
    return it == m.end() ? Expr() : it->second;
}

}  // namespace jlq
