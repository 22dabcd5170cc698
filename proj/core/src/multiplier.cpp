#include "jlq/multiplier.hpp"

#include <stdexcept>

namespace jlq {

PairResult jlm_from_pair(const Ode2& ode, const PointSymmetry& s1, const PointSymmetry& s2) {
    for (const auto* s : {&s1, &s2})
        if (!verify_point_symmetry(*s, ode).ok)
            throw std::invalid_argument("not a symmetry of the equation: " + (s->label.empty() ? s->v.str() : s->label));
    Expr qd = Expr::variable(vars::qd());
    Expr e1 = prolong(s1, ode).eta1, e2 = prolong(s2, ode).eta1;
    // expansion along the first row
    Expr d = (s1.g * e2 - e1 * s2.g) - qd * (s1.v * e2 - e1 * s2.v) + ode.rhs * (s1.v * s2.g - s1.g * s2.v);
    PairResult r;
    r.delta = d;
    if (d.is_zero()) {
        r.degenerate = true;
        return r;
    }
    r.multiplier = Multiplier{d.inverse(), s1.label + "," + s2.label};
    return r;
}

MultiplierCheck verify_multiplier(const Ode2& ode, const Expr& m) {
    if (m.is_zero()) throw std::invalid_argument("the zero function is not a multiplier");
    Expr r = total_derivative(m, ode) + m * diff(ode.rhs, vars::qd());
    return {r.is_zero(), r};
}

Ratio multiplier_ratio(const Multiplier& m1, const Multiplier& m2, const Ode2& ode) {
    Expr r = m1.m / m2.m;
    if (!total_derivative(r, ode).is_zero())
        throw std::logic_error("ratio of multipliers is not a first integral: " + r.str());
    return {r, r.is_constant()};
}

std::vector<SweepEntry> multiplier_sweep(const Ode2& ode, const std::vector<PointSymmetry>& syms) {
    std::vector<SweepEntry> out;
    for (std::size_t i = 0; i < syms.size(); ++i) {
        for (std::size_t j = i + 1; j < syms.size(); ++j) {
            SweepEntry e;
            e.s1 = syms[i].label;
            e.s2 = syms[j].label;
            auto pr = jlm_from_pair(ode, syms[i], syms[j]);
            e.degenerate = pr.degenerate;
            if (!e.degenerate) {
                e.m = pr.multiplier->m;
                for (std::size_t k = 0; k < out.size(); ++k) {
                    if (out[k].degenerate || out[k].duplicate_of) continue;
                    if (auto c = constant_ratio(e.m, out[k].m)) {
                        e.duplicate_of = k;
                        e.factor = *c;
                        break;
                    }
                }
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

std::vector<Multiplier> distinct_multipliers(const std::vector<SweepEntry>& sweep) {
    std::vector<Multiplier> out;
    for (auto& e : sweep)
        if (!e.degenerate && !e.duplicate_of) out.push_back({e.m, e.s1 + "," + e.s2});
    return out;
}

}  // namespace jlq
