#include "jlq/staged_solver.hpp"

#include "jlq/linear_solve.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace jlq {

namespace {

using PolyMap = std::unordered_map<Var, Poly>;

Poly subst_poly(const Poly& e, const PolyMap& vals) {
    bool touched = false;
    for (auto& t : e.terms()) {
        for (auto& f : t.m.factors())
            if (vals.count(f.first)) {
                touched = true;
                break;
            }
        if (touched) break;
    }
    if (!touched) return e;
    std::unordered_map<Monomial, GQ, MonomialHash> acc;
    std::unordered_map<Var, std::vector<Poly>> powers;
    auto power = [&](Var v, int k) -> const Poly& {
        auto& list = powers[v];
        if (list.empty()) list.push_back(Poly(1));
        while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * vals.at(v));
        return list[static_cast<std::size_t>(k)];
    };
    auto add = [&](const Monomial& m, const GQ& c) {
        auto it = acc.find(m);
        if (it == acc.end())
            acc.emplace(m, c);
        else
            it->second += c;
    };
    for (auto& t : e.terms()) {
        std::vector<Monomial::Factor> rest;
        std::vector<std::pair<Var, int>> hit;
        for (auto& f : t.m.factors()) (vals.count(f.first) ? hit : rest).push_back(f);
        if (hit.empty()) {
            add(t.m, t.c);
            continue;
        }
        Poly prod = Poly::monomial(Monomial(std::move(rest)), t.c);
        for (auto& [v, k] : hit) prod = prod * power(v, k);
        for (auto& u : prod.terms()) add(u.m, u.c);
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) terms.push_back({m, c});
    return Poly::from_terms(std::move(terms));
}

// Numerator of e with v = num/den.
Poly subst_fraction(const Poly& e, Var v, const Poly& num, const Poly& den) {
    if (!e.has_var(v)) return e;
    if (den.is_constant()) return subst_poly(e, PolyMap{{v, num.scaled(den.constant_value().inverse())}});
    auto cs = e.coefficients_in(v);
    int k = cs.rbegin()->first;
    Poly r;
    for (auto& [j, c] : cs) r += c * num.pow(static_cast<unsigned>(j)) * den.pow(static_cast<unsigned>(k - j));
    return r;
}

// True when v occurs only in terms c*v.
bool linear_constant_coefficient(const Poly& e, Var v) {
    for (auto& t : e.terms()) {
        int k = t.m.exponent(v);
        if (k == 0) continue;
        if (k != 1 || t.m.factors().size() != 1) return false;
    }
    return true;
}

struct State {
    std::vector<Poly> eqs;
    std::vector<std::pair<Var, Expr>> subs;
    std::vector<Poly> nz;
    std::vector<std::string> cases;
    int depth = 0;
};

class Solver {
public:
    Solver(const StagedSystem& sys, int depth) : depth_(depth) {
        for (Var v : sys.eliminate_first) add_var(v, true);
        for (Var v : sys.others) add_var(v, false);
        for (Var v : sys.principal) principal_.insert(v);
        start_.eqs = sys.equations;
        start_.nz = sys.nonzero;
        start_.depth = depth;
    }

    StagedResult run() {
        rec(start_);
        return std::move(out_);
    }

private:
    void add_var(Var v, bool first) {
        if (index_.count(v)) return;
        index_[v] = static_cast<int>(all_.size());
        all_.push_back(v);
        if (first) first_.insert(v);
    }
    int idx(Var v) const {
        auto it = index_.find(v);
        return it == index_.end() ? 1 << 30 : it->second;
    }
    bool is_first(Var v) const { return first_.count(v) > 0; }
    bool has_first(const Poly& p) const {
        for (Var v : p.variables())
            if (is_first(v)) return true;
        return false;
    }
    bool only_principal(const Poly& p) const {
        for (Var v : p.variables())
            if (!principal_.count(v)) return false;
        return true;
    }

    static bool known_nonzero(Poly c, const std::vector<Poly>& nz) {
        if (c.is_constant()) return !c.is_zero();
        bool progress = true;
        while (progress && !c.is_constant()) {
            progress = false;
            for (auto& n : nz) {
                if (n.total_degree() > c.total_degree()) continue;
                if (auto q = divide_exact(c, n)) {
                    c = std::move(*q);
                    progress = true;
                    break;
                }
            }
        }
        return c.is_constant();
    }

    // Drops zeros, duplicates and factors known to be nonzero; false when the
    // branch is inconsistent.
    static bool simplify(State& s) {
        std::vector<Poly> nz;
        std::unordered_set<Poly, PolyHash> seen_nz;
        std::unordered_set<Var> nz_vars;
        for (auto& n : s.nz) {
            if (n.is_zero()) return false;
            if (n.is_constant()) continue;
            Poly m = n.monic();
            if (m.is_monomial())
                for (auto& f : m.lead().m.factors()) nz_vars.insert(f.first);
            if (seen_nz.insert(m).second) nz.push_back(std::move(m));
        }
        s.nz = std::move(nz);
        std::vector<Poly> eqs;
        std::unordered_set<Poly, PolyHash> seen;
        for (auto& e : s.eqs) {
            if (e.is_zero()) continue;
            if (e.is_constant()) return false;
            Poly m = e.monic();
            Monomial content = m.min_monomial();
            if (!content.is_one()) {
                std::vector<Monomial::Factor> drop;
                for (auto& f : content.factors())
                    if (nz_vars.count(f.first)) drop.push_back(f);
                if (!drop.empty()) m = m.shifted(Monomial(std::move(drop)).pow(-1));
                if (m.is_constant()) return false;
            }
            if (m.size() <= 64)
                for (auto& n : s.nz) {
                    if (n.is_monomial() || n.total_degree() > m.total_degree()) continue;
                    while (auto q = divide_exact(m, n)) m = std::move(*q);
                    if (m.is_constant()) return false;
                }
            if (m.is_monomial()) {
                // a product of parameters vanishes: keep each factor once
                std::vector<Monomial::Factor> f;
                for (auto& [v, k] : m.lead().m.factors()) f.emplace_back(v, 1);
                m = Poly::monomial(Monomial(std::move(f)));
            }
            m = m.monic();
            if (seen.insert(m).second) eqs.push_back(std::move(m));
        }
        s.eqs = std::move(eqs);
        return true;
    }

    static void apply(State& s, const PolyMap& vals) {
        for (auto& e : s.eqs) e = subst_poly(e, vals);
        for (auto& n : s.nz) n = subst_poly(n, vals);
    }

    static void apply_fraction(State& s, Var v, const Poly& num, const Poly& den) {
        for (auto& e : s.eqs) e = subst_fraction(e, v, num, den);
        for (auto& n : s.nz) n = subst_fraction(n, v, num, den);
        s.subs.emplace_back(v, Expr::fraction(num, den));
    }

    // Batched Gauss-Jordan on all equations of degree <= 1. Returns false if
    // there were none; sets dead on inconsistency.
    bool linear_stage(State& s, bool& dead) {
        std::vector<Poly> lin, rest;
        for (auto& e : s.eqs) (e.total_degree() <= 1 ? lin : rest).push_back(e);
        if (lin.empty()) return false;
        std::vector<Var> cols;
        std::unordered_map<Var, int> col;
        for (auto& e : lin)
            for (Var v : e.variables())
                if (!col.count(v)) {
                    col[v] = 0;
                    cols.push_back(v);
                }
        std::sort(cols.begin(), cols.end(), [&](Var a, Var b) { return idx(a) < idx(b); });
        for (std::size_t j = 0; j < cols.size(); ++j) col[cols[j]] = static_cast<int>(j);
        int n = static_cast<int>(cols.size());
        std::vector<SparseRow> rows;
        for (auto& e : lin) {
            SparseRow row;
            GQ rhs(0);
            for (auto& t : e.terms()) {
                if (t.m.is_one())
                    rhs = -t.c;
                else
                    row.emplace_back(col[t.m.factors()[0].first], t.c);
            }
            std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
            if (!rhs.is_zero()) row.emplace_back(n, rhs);
            rows.push_back(std::move(row));
        }
        Rref r = rref(std::move(rows), n);
        if (r.inconsistent) {
            dead = true;
            return true;
        }
        PolyMap vals;
        for (std::size_t k = 0; k < r.rows.size(); ++k) {
            Var pv = cols[static_cast<std::size_t>(r.pivots[k])];
            std::vector<Term> terms;
            for (auto& [j, a] : r.rows[k]) {
                if (j == r.pivots[k]) continue;
                if (j == n)
                    terms.push_back({Monomial(), a});
                else
                    terms.push_back({Monomial::of(cols[static_cast<std::size_t>(j)]), -a});
            }
            Poly val = Poly::from_terms(std::move(terms));
            s.subs.emplace_back(pv, Expr(val));
            vals.emplace(pv, std::move(val));
        }
        s.eqs = std::move(rest);
        apply(s, vals);
        return true;
    }

    std::vector<std::size_t> by_size(const State& s) const {
        std::vector<std::size_t> order(s.eqs.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return s.eqs[a].size() < s.eqs[b].size();
        });
        return order;
    }

    // Smallest equation with a variable of degree one and constant coefficient.
    bool constant_pivot(State& s, const std::vector<std::size_t>& order) {
        for (std::size_t k : order) {
            const Poly& e = s.eqs[k];
            Var best = 0;
            bool found = false;
            for (Var v : e.variables()) {
                if (!linear_constant_coefficient(e, v)) continue;
                if (!found || std::make_pair(!is_first(v), idx(v)) < std::make_pair(!is_first(best), idx(best))) {
                    best = v;
                    found = true;
                }
            }
            if (!found) continue;
            auto cs = e.coefficients_in(best);
            GQ c = cs[1].constant_value();
            Poly rest = cs.count(0) ? cs[0] : Poly();
            Poly val = rest.scaled(-c.inverse());
            s.subs.emplace_back(best, Expr(val));
            apply(s, PolyMap{{best, val}});
            return true;
        }
        return false;
    }

    struct Candidate {
        std::size_t eq;
        Var v;
        Poly coef;
        Poly rest;
    };

    // Degree-one occurrences whose coefficient passes `accept`; first match in size order.
    template <class Accept>
    std::optional<Candidate> find_pivot(const State& s, const std::vector<std::size_t>& order, bool first_vars_only,
                                        Accept accept) const {
        std::optional<Candidate> best;
        std::tuple<std::size_t, std::size_t, std::string, int> best_key;
        for (std::size_t k : order) {
            const Poly& e = s.eqs[k];
            for (Var v : e.variables()) {
                if (first_vars_only && !is_first(v)) continue;
                if (e.degree(v) != 1) continue;
                auto cs = e.coefficients_in(v);
                const Poly& c = cs[1];
                if (has_first(c) || !accept(c)) continue;
                auto key = std::make_tuple(c.size(), c.variables().size(), c.str(), static_cast<std::size_t>(idx(v)));
                if (!best || key < best_key) {
                    best = Candidate{k, v, c, cs.count(0) ? cs[0] : Poly()};
                    best_key = key;
                }
            }
            if (best) return best;
        }
        return best;
    }

    void pivot_on(State& s, const Candidate& c) { apply_fraction(s, c.v, -c.rest, c.coef); }

    void record(const State& s) {
        StagedBranch b;
        Bindings fin;
        for (auto it = s.subs.rbegin(); it != s.subs.rend(); ++it) fin[it->first] = substitute(it->second, fin);
        for (auto& [v, e] : fin) b.values.emplace(v, e);
        for (Var v : all_)
            if (!fin.count(v)) b.free.push_back(v);
        b.nonzero = s.nz;
        b.cases = s.cases;
        out_.branches.push_back(std::move(b));
    }

    void split_on(State& s, const Candidate& c) {
        ++out_.splits;
        State zero = s;
        zero.depth = s.depth - 1;
        zero.eqs.push_back(squarefree_part(c.coef));
        zero.cases.push_back(c.coef.str() + " = 0");
        rec(std::move(zero));
        s.depth -= 1;
        s.nz.push_back(c.coef);
        s.cases.push_back(c.coef.str() + " != 0");
        pivot_on(s, c);
    }

    // Factors visible without full factorization: monomial content, then
    // content with respect to one variable.
    static std::vector<Poly> visible_factors(const Poly& e) {
        std::vector<Poly> f;
        Monomial m = e.min_monomial();
        for (auto& [v, k] : m.factors()) f.push_back(Poly::variable(v));
        Poly rest = m.is_one() ? e : e.shifted(m.pow(-1));
        if (rest.is_constant() || rest.size() > 64) return f;
        for (Var v : rest.variables()) {
            auto cs = rest.coefficients_in(v);
            if (cs.size() < 2) continue;
            Poly g;
            for (auto& [j, c] : cs) {
                g = g.is_zero() ? c : gcd(g, c);
                if (g.is_constant()) break;
            }
            if (!g.is_constant()) {
                f.push_back(g.monic());
                f.push_back(divide_exact(rest, g)->monic());
                return f;
            }
        }
        if (!f.empty()) f.push_back(rest.monic());
        return f;
    }

    // Most frequent proper factor among the equations, not already known nonzero.
    std::optional<Poly> common_factor(const State& s) const {
        std::unordered_map<Poly, int, PolyHash> count;
        std::vector<Poly> seen;
        for (auto& e : s.eqs)
            for (auto& f : visible_factors(e)) {
                if (f.is_constant()) continue;
                if (count[f]++ == 0) seen.push_back(f);
            }
        std::optional<Poly> best;
        int best_n = 0;
        for (auto& f : seen) {
            int n = count[f];
            if (known_nonzero(f, s.nz)) continue;
            bool better = !best || n > best_n ||
                          (n == best_n && std::make_pair(f.size(), f.str()) < std::make_pair(best->size(), best->str()));
            if (better) {
                best = f;
                best_n = n;
            }
        }
        return best;
    }

    // Partial factorization of an equation free of first-class variables:
    // monomial content, then content with respect to one variable.
    std::vector<Poly> factor_split(const State& s, const std::vector<std::size_t>& order) const {
        for (std::size_t k : order) {
            const Poly& e = s.eqs[k];
            if (has_first(e)) continue;
            Monomial m = e.min_monomial();
            if (!m.is_one()) {
                std::vector<Poly> f;
                for (auto& [v, p] : m.factors()) f.push_back(Poly::variable(v));
                Poly rest = e.shifted(m.pow(-1));
                if (!rest.is_constant()) f.push_back(rest);
                return f;
            }
            for (Var v : e.variables()) {
                auto cs = e.coefficients_in(v);
                if (cs.size() < 2) continue;
                Poly g;
                for (auto& [j, c] : cs) {
                    g = g.is_zero() ? c : gcd(g, c);
                    if (g.is_constant()) break;
                }
                if (!g.is_constant()) return {g, *divide_exact(e, g)};
            }
        }
        return {};
    }

    void rec(State s) {
        while (true) {
            if (!simplify(s)) return;
            if (s.eqs.empty()) {
                record(s);
                return;
            }
            bool dead = false;
            if (linear_stage(s, dead)) {
                if (dead) return;
                continue;
            }
            auto order = by_size(s);
            if (constant_pivot(s, order)) continue;
            auto known = [&](const Poly& c) { return known_nonzero(c, s.nz); };
            if (auto c = find_pivot(s, order, false, known)) {
                pivot_on(s, *c);
                continue;
            }
            if (auto f = common_factor(s)) {
                ++out_.splits;
                State zero = s;
                zero.eqs.push_back(squarefree_part(*f));
                zero.cases.push_back(f->str() + " = 0");
                rec(std::move(zero));
                s.nz.push_back(*f);
                s.cases.push_back(f->str() + " != 0");
                continue;
            }
            if (s.depth <= 0) {
                out_.unresolved.push_back(s.eqs);
                return;
            }
            if (auto c = find_pivot(s, order, true, [&](const Poly& p) { return only_principal(p); })) {
                split_on(s, *c);
                continue;
            }
            auto factors = factor_split(s, order);
            if (!factors.empty()) {
                ++out_.splits;
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    State b = s;
                    b.depth = s.depth - 1;
                    b.eqs.push_back(squarefree_part(factors[j]));
                    b.cases.push_back(factors[j].str() + " = 0");
                    for (std::size_t i = 0; i < j; ++i) b.nz.push_back(factors[i]);
                    rec(std::move(b));
                }
                return;
            }
            if (auto c = find_pivot(s, order, true, [](const Poly&) { return true; })) {
                split_on(s, *c);
                continue;
            }
            if (auto c = find_pivot(s, order, false, [](const Poly&) { return true; })) {
                split_on(s, *c);
                continue;
            }
            out_.unresolved.push_back(s.eqs);
            return;
        }
    }

    int depth_;
    State start_;
    std::unordered_map<Var, int> index_;
    std::unordered_set<Var> first_, principal_;
    std::vector<Var> all_;
    StagedResult out_;
};

}  // namespace

StagedResult solve_staged(const StagedSystem& sys, int max_depth) { return Solver(sys, max_depth).run(); }

}  // namespace jlq
