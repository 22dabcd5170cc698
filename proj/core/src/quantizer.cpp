#include "jlq/quantizer.hpp"

#include "jlq/collect.hpp"

#include <algorithm>
#include <set>

namespace jlq {

namespace {

using S = LinearPde2;

const Var T = vars::t();
const Var X = vars::x();

Var log_t() { return log_atom(Expr::variable(T)); }
Var log_x() { return log_atom(Expr::variable(X)); }

Poly to_laurent(const Expr& e, const std::string& what) {
    if (e.den().size() != 1)
        throw std::invalid_argument(what + " is not a Laurent polynomial in (t, x): " + e.str());
    const Var lt = log_t(), lx = log_x();
    for (Var v : e.variables())
        if (v != T && v != X && v != lt && v != lx)
            throw std::invalid_argument(what + " depends on " + sym_name(v));
    const Term& d = e.den().lead();
    return e.num().shifted(d.m.pow(-1)).scaled(d.c.inverse());
}

// Total derivatives on Laurent polynomials carrying log(t), log(x) atoms.
struct Deriv {
    Var lt = log_t(), lx = log_x();
    Poly dt(const Poly& p) const { return p.diff(T) + p.diff(lt).shifted(Monomial::of(T, -1)); }
    Poly dx(const Poly& p) const { return p.diff(X) + p.diff(lx).shifted(Monomial::of(X, -1)); }
};

// Prolonged coefficients without the undifferentiated lam terms: they are
// lam*c_k in every slot, so they cancel against mu*c_k once the pivot
// coefficient is a constant.
std::array<Poly, 6> prolonged(const Deriv& D, const std::array<Poly, 6>& c, const Poly& tau, const Poly& xi,
                              const Poly& lam) {
    std::array<Poly, 6> out;
    auto field = [&](const Poly& f) { return tau * D.dt(f) + xi * D.dx(f); };
    for (int k = 0; k < 6; ++k) out[k] = field(c[k]);
    Poly tt = D.dt(tau), tx = D.dx(tau), xt = D.dt(xi), xx = D.dx(xi);
    Poly lt = D.dt(lam), lx = D.dx(lam);
    auto add = [&](const Poly& coef, std::initializer_list<std::pair<int, Poly>> eta) {
        if (coef.is_zero()) return;
        for (auto& [k, v] : eta)
            if (!v.is_zero()) out[k] += coef * v;
    };
    add(c[S::tt], {{S::tt, -tt.scaled(GQ(2))}, {S::tx, -xt.scaled(GQ(2))}, {S::t, lt.scaled(GQ(2)) - D.dt(tt)},
                   {S::x, -D.dt(xt)}, {S::zero, D.dt(lt)}});
    add(c[S::tx], {{S::tt, -tx}, {S::tx, -tt - xx}, {S::xx, -xt}, {S::t, lx - D.dx(tt)}, {S::x, lt - D.dx(xt)},
                   {S::zero, D.dx(lt)}});
    add(c[S::xx], {{S::tx, -tx.scaled(GQ(2))}, {S::xx, -xx.scaled(GQ(2))}, {S::t, -D.dx(tx)},
                   {S::x, lx.scaled(GQ(2)) - D.dx(xx)}, {S::zero, D.dx(lx)}});
    add(c[S::t], {{S::t, -tt}, {S::x, -xt}, {S::zero, lt}});
    add(c[S::x], {{S::t, -tx}, {S::x, -xx}, {S::zero, lx}});
    return out;
}

// Principal normalization cases: which slot is fixed to 1 and which are forced to 0.
struct Case {
    int pivot;
    std::string name;
};

struct Ansatz {
    std::array<Poly, 6> c;
    std::vector<Poly> lams;
    std::vector<Var> cparams, lparams, principal;
};

std::vector<Monomial> laurent_basis(int degree, bool with_t) {
    std::vector<Monomial> out;
    for (int a = with_t ? -degree : 0; a <= (with_t ? degree : 0); ++a)
        for (int b = -degree; b <= degree; ++b) {
            std::vector<Monomial::Factor> f;
            if (a) f.emplace_back(T, a);
            if (b) f.emplace_back(X, b);
            out.emplace_back(std::move(f));
        }
    return out;
}

Ansatz build_ansatz(const QuantizeOptions& opt, int pivot, std::size_t nsym, std::size_t run) {
    Ansatz a;
    const bool schr = opt.schrodinger_mode;
    auto basis = laurent_basis(opt.degree, !schr);
    std::string tag = "_r" + std::to_string(run) + "_";
    for (int k = 0; k < 6; ++k) {
        bool fixed_zero = schr ? (k == S::tt || k == S::tx) : k < pivot;
        if (schr && k == S::t) {
            a.c[k] = Poly(GQ(0, 2));
            continue;
        }
        if (!schr && k == pivot) {
            a.c[k] = Poly(1);
            continue;
        }
        if (fixed_zero) continue;
        std::size_t idx = 0;
        for (auto& m : basis) {
            Var p = sym(tag + "c" + std::to_string(k) + "_" + std::to_string(idx++));
            a.c[k] += Poly::monomial(m * Monomial::of(p));
            a.cparams.push_back(p);
            if (k < 3) a.principal.push_back(p);
        }
    }
    auto lbasis = laurent_basis(opt.degree, true);
    std::vector<Monomial> lmon;
    for (auto& m : lbasis) {
        if (!m.is_one()) lmon.push_back(m);  // constants are the trivial psi d/dpsi part
        if (opt.allow_log) {
            lmon.push_back(m * Monomial::of(log_t()));
            lmon.push_back(m * Monomial::of(log_x()));
        }
    }
    for (std::size_t i = 0; i < nsym; ++i) {
        Poly l;
        std::size_t idx = 0;
        for (auto& m : lmon) {
            Var p = sym(tag + "l" + std::to_string(i) + "_" + std::to_string(idx++));
            l += Poly::monomial(m * Monomial::of(p));
            a.lparams.push_back(p);
        }
        a.lams.push_back(std::move(l));
    }
    return a;
}

Expr value_of(const Poly& ansatz, const std::map<Var, Expr>& values) {
    Bindings b(values.begin(), values.end());
    return substitute(Expr(ansatz), b);
}

std::vector<Poly> coefficient_equations(const std::vector<Poly>& polys, const std::set<Var>& params) {
    std::vector<Poly> eqs;
    for (auto& p : polys) {
        std::vector<Var> vs;
        for (Var v : p.variables())
            if (!params.count(v)) vs.push_back(v);
        auto cm = p.coefficients_in(vs);
        std::vector<std::pair<Monomial, Poly>> sorted(cm.begin(), cm.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](auto& l, auto& r) { return rank_order_compare(l.first, r.first) > 0; });
        for (auto& [m, c] : sorted)
            if (!c.is_zero()) eqs.push_back(c);
    }
    return eqs;
}

bool principal_vanishes(const LinearPde2& p) {
    return p.c[S::tt].is_zero() && p.c[S::tx].is_zero() && p.c[S::xx].is_zero();
}

}  // namespace

DeterminingResult solve_determining(const std::vector<PdeSymmetry>& geometric, const QuantizeOptions& opt) {
    if (opt.degree < 0) throw std::invalid_argument("degree must be nonnegative");
    Deriv D;
    std::vector<std::pair<Poly, Poly>> geo;
    for (auto& s : geometric)
        geo.emplace_back(to_laurent(s.xi_t, "t-component of " + s.label), to_laurent(s.xi_x, "x-component of " + s.label));

    std::vector<Case> cases;
    if (opt.schrodinger_mode)
        cases.push_back({S::t, "schrodinger"});
    else {
        cases.push_back({S::tt, "c_tt=1"});
        if (opt.principal_fallback) {
            cases.push_back({S::tx, "c_tt=0,c_tx=1"});
            cases.push_back({S::xx, "c_tt=0,c_tx=0,c_xx=1"});
        }
    }

    DeterminingResult res;
    std::size_t run = 0;
    std::size_t next_name = 1;
    for (auto& cs : cases) {
        Ansatz a = build_ansatz(opt, cs.pivot, geo.size(), run++);
        std::vector<Poly> residuals;
        const Poly& cp = a.c[cs.pivot];
        GQ cpi = cp.constant_value().inverse();
        for (std::size_t i = 0; i < geo.size(); ++i) {
            auto k = prolonged(D, a.c, geo[i].first, geo[i].second, a.lams[i]);
            Poly mu = k[cs.pivot].scaled(cpi);
            for (int j = 0; j < 6; ++j)
                if (j != cs.pivot) residuals.push_back(k[j] - mu * a.c[j]);
        }
        std::set<Var> params(a.cparams.begin(), a.cparams.end());
        params.insert(a.lparams.begin(), a.lparams.end());
        StagedSystem sys;
        sys.equations = coefficient_equations(residuals, params);
        sys.eliminate_first = a.lparams;
        sys.others = a.cparams;
        sys.principal = a.principal;
        res.equations += sys.equations.size();
        res.unknowns += params.size();
        StagedResult sr = solve_staged(sys, opt.max_depth);
        res.splits += sr.splits;
        for (auto& u : sr.unresolved) {
            std::string s = cs.name + ":";
            for (std::size_t i = 0; i < u.size() && i < 8; ++i) s += " " + u[i].str() + " = 0;";
            if (u.size() > 8) s += " ...";
            res.unresolved.push_back(s);
        }
        for (auto& br : sr.branches) {
            DeterminingBranch out;
            out.pde.schrodinger_mode = opt.schrodinger_mode;
            for (int k = 0; k < 6; ++k) out.pde.c[k] = value_of(a.c[k], br.values);
            for (auto& l : a.lams) out.lams.push_back(value_of(l, br.values));
            if (principal_vanishes(out.pde)) continue;
            // rename the surviving parameters a1, a2, ...
            std::set<Var> used;
            for (auto& e : out.pde.c)
                for (Var v : e.variables()) used.insert(v);
            for (auto& e : out.lams)
                for (Var v : e.variables()) used.insert(v);
            Bindings rename;
            for (Var f : br.free) {
                if (!used.count(f)) continue;
                Var nv = sym("a" + std::to_string(next_name++));
                rename[f] = Expr::variable(nv);
                out.free.push_back(nv);
            }
            for (auto& e : out.pde.c) e = substitute(e, rename);
            for (auto& e : out.lams) e = substitute(e, rename);
            for (auto& nz : br.nonzero) {
                Expr z = substitute(value_of(nz, br.values), rename);
                bool relevant = true;
                for (Var v : z.variables())
                    if (!std::count(out.free.begin(), out.free.end(), v)) relevant = false;
                if (relevant && !z.is_constant()) out.nonzero.push_back(z);
            }
            out.cases = br.cases;
            out.cases.insert(out.cases.begin(), cs.name);
            for (std::size_t i = 0; i < geometric.size(); ++i) {
                PdeSymmetry s{geometric[i].xi_t, geometric[i].xi_x, out.lams[i], geometric[i].label};
                if (!is_pde_symmetry(out.pde, s))
                    throw std::logic_error("determining branch fails the symmetry check for " + s.label);
            }
            res.branches.push_back(std::move(out));
        }
    }
    return res;
}

namespace {

std::optional<Specialization> specialize(const DeterminingBranch& b, const std::vector<Poly>& eqs) {
    std::map<Var, Expr> values;
    std::vector<Var> left = b.free;
    std::vector<Expr> nonzero = b.nonzero;
    if (!eqs.empty()) {
        StagedSystem sys;
        sys.equations = eqs;
        sys.eliminate_first = b.free;
        for (auto& z : b.nonzero) sys.nonzero.push_back(z.num());
        StagedResult r = solve_staged(sys, 3);
        if (r.branches.empty()) return std::nullopt;
        const StagedBranch& br = r.branches.front();
        values = br.values;
        left = br.free;
        for (auto& z : br.nonzero) nonzero.push_back(Expr(z));
    }
    // smallest admissible integer for each parameter still free
    Bindings fixed;
    auto admissible = [&](const Bindings& trial) {
        try {
            for (auto& z : nonzero)
                if (substitute(z, trial).is_zero()) return false;
            for (auto& [v, e] : values) substitute(e, trial);
        } catch (const std::domain_error&) {
            return false;
        }
        return true;
    };
    for (Var f : left) {
        bool ok = false;
        for (long v = 0; v < 16 && !ok; ++v) {
            Bindings trial = fixed;
            trial[f] = Expr(v);
            if (admissible(trial)) {
                fixed = std::move(trial);
                ok = true;
            }
        }
        if (!ok) return std::nullopt;
    }
    Specialization out;
    for (Var f : b.free) {
        auto it = values.find(f);
        out.params[f] = it == values.end() ? fixed.at(f) : substitute(it->second, fixed);
    }
    for (auto& z : b.nonzero)
        if (substitute(z, out.params).is_zero()) return std::nullopt;
    out.pde.schrodinger_mode = b.pde.schrodinger_mode;
    for (int k = 0; k < 6; ++k) out.pde.c[k] = substitute(b.pde.c[k], out.params);
    for (auto& l : b.lams) out.lams.push_back(substitute(l, out.params));
    return out;
}

std::vector<Poly> vanishing_equations(const std::vector<Expr>& es, const std::vector<Var>& params) {
    std::set<Var> ps(params.begin(), params.end());
    std::vector<Poly> nums;
    for (auto& e : es)
        if (!e.is_zero()) nums.push_back(e.num());
    return coefficient_equations(nums, ps);
}

int first_principal(const LinearPde2& p) {
    for (int k = 0; k < 3; ++k)
        if (!p.c[k].is_zero()) return k;
    return -1;
}

// golden scaled to the branch normalization, or nullopt if the principal patterns differ
std::optional<LinearPde2> scaled_like(const DeterminingBranch& b, const LinearPde2& golden) {
    LinearPde2 g = golden;
    g.schrodinger_mode = b.pde.schrodinger_mode;
    if (b.pde.schrodinger_mode) {
        if (!golden.c[S::tt].is_zero() || !golden.c[S::tx].is_zero() || golden.c[S::t].is_zero()) return std::nullopt;
        Expr s = Expr(GQ(0, 2)) / golden.c[S::t];
        for (auto& e : g.c) e = e * s;
        return g;
    }
    int k = first_principal(golden);
    if (k < 0) return std::nullopt;
    for (int j = 0; j < k; ++j)
        if (!b.pde.c[j].is_zero()) return std::nullopt;
    if (b.pde.c[k] != Expr(1)) return std::nullopt;
    Expr s = golden.c[k].inverse();
    for (auto& e : g.c) e = e * s;
    return g;
}

}  // namespace

std::optional<Specialization> branch_member(const DeterminingBranch& b, const LinearPde2& golden,
                                            const std::vector<Expr>& golden_lams) {
    auto g = scaled_like(b, golden);
    if (!g) return std::nullopt;
    std::vector<Expr> diffs;
    for (int k = 0; k < 6; ++k) diffs.push_back(b.pde.c[k] - g->c[k]);
    if (!golden_lams.empty()) {
        if (golden_lams.size() != b.lams.size())
            throw std::invalid_argument("expected " + std::to_string(b.lams.size()) + " lambdas, got " +
                                        std::to_string(golden_lams.size()));
        for (std::size_t i = 0; i < b.lams.size(); ++i) {
            Expr d = b.lams[i] - golden_lams[i];
            diffs.push_back(diff(d, T));
            diffs.push_back(diff(d, X));
        }
    }
    auto eqs = vanishing_equations(diffs, b.free);
    for (auto& e : eqs)
        if (e.is_constant()) return std::nullopt;
    auto sp = eqs.empty() ? specialize(b, {}) : specialize(b, eqs);
    if (!sp) return std::nullopt;
    for (int k = 0; k < 6; ++k)
        if (sp->pde.c[k] != g->c[k]) return std::nullopt;
    for (std::size_t i = 0; i < golden_lams.size(); ++i) {
        Expr d = sp->lams[i] - golden_lams[i];
        if (!diff(d, T).is_zero() || !diff(d, X).is_zero()) return std::nullopt;
    }
    return sp;
}

Specialization representative(const DeterminingBranch& b) {
    if (!b.pde.schrodinger_mode && !b.pde.c[S::t].is_zero()) {
        auto eqs = vanishing_equations({b.pde.c[S::t]}, b.free);
        bool hopeless = false;
        for (auto& e : eqs) hopeless = hopeless || e.is_constant();
        if (!hopeless)
            if (auto sp = specialize(b, eqs)) return *sp;
    }
    auto sp = specialize(b, {});
    if (!sp) throw std::logic_error("no admissible parameter values for the branch");
    return *sp;
}

}  // namespace jlq
