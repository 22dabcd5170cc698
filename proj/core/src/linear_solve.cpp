#include "jlq/linear_solve.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace jlq {

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::unique: return "unique";
        case SolveStatus::parametrized: return "parametrized";
        case SolveStatus::inconsistent: return "inconsistent";
    }
    return "unique";
}

Expr LinSolveResult::value(Var u) const {
    for (auto& [v, e] : assignments)
        if (v == u) return e;
    return Expr::variable(u);
}

namespace {

SparseRow axpy(const SparseRow& a, const GQ& s, const SparseRow& b) {
    // a - s*b
    SparseRow r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.emplace_back(b[j].first, -(s * b[j].second));
            ++j;
        } else {
            GQ v = a[i].second - s * b[j].second;
            if (!v.is_zero()) r.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

const GQ* find_col(const SparseRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

}  // namespace

Rref rref(std::vector<SparseRow> rows, int ncols) {
    Rref out;
    std::vector<bool> used(rows.size(), false);
    std::vector<std::size_t> pivot_rows;
    for (auto& r : rows) {
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        r.erase(std::remove_if(r.begin(), r.end(), [](const auto& e) { return e.second.is_zero(); }), r.end());
    }
    for (int col = 0; col < ncols; ++col) {
        std::size_t best = rows.size();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (used[k] || rows[k].empty() || rows[k].front().first != col) continue;
            if (best == rows.size() || rows[k].size() < rows[best].size()) best = k;
        }
        if (best == rows.size()) continue;
        used[best] = true;
        GQ inv = rows[best].front().second.inverse();
        for (auto& e : rows[best]) e.second *= inv;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == best) continue;
            const GQ* v = find_col(rows[k], col);
            if (!v) continue;
            GQ s = *v;
            rows[k] = axpy(rows[k], s, rows[best]);
        }
        pivot_rows.push_back(best);
        out.pivots.push_back(col);
    }
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (!used[k] && !rows[k].empty() && rows[k].front().first >= ncols) out.inconsistent = true;
    for (auto k : pivot_rows) out.rows.push_back(std::move(rows[k]));
    return out;
}

std::vector<std::vector<GQ>> nullspace(const Rref& r, int ncols) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<GQ>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<GQ> v(static_cast<std::size_t>(ncols), GQ(0));
        v[static_cast<std::size_t>(f)] = GQ(1);
        for (std::size_t k = 0; k < r.rows.size(); ++k) {
            const GQ* c = find_col(r.rows[k], f);
            if (c) v[static_cast<std::size_t>(r.pivots[k])] = -*c;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Expr>> solve_dense(std::vector<std::vector<Expr>> a, std::vector<Expr> b) {
    std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<std::size_t> piv_row(n, m);
    std::vector<bool> used(m, false);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = m;
        for (std::size_t r = 0; r < m; ++r) {
            if (used[r] || a[r][col].is_zero()) continue;
            if (best == m || (a[r][col].is_constant() && !a[best][col].is_constant()) ||
                (a[r][col].is_constant() == a[best][col].is_constant() &&
                 a[r][col].num().size() + a[r][col].den().size() < a[best][col].num().size() + a[best][col].den().size()))
                best = r;
        }
        if (best == m) return std::nullopt;
        used[best] = true;
        piv_row[col] = best;
        Expr inv = a[best][col].inverse();
        for (auto& e : a[best]) e = e * inv;
        b[best] = b[best] * inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == best || a[r][col].is_zero()) continue;
            Expr s = a[r][col];
            for (std::size_t c = 0; c < n; ++c)
                if (!a[best][c].is_zero()) a[r][c] = a[r][c] - s * a[best][c];
            b[r] = b[r] - s * b[best];
        }
    }
    for (std::size_t r = 0; r < m; ++r)
        if (!used[r] && !b[r].is_zero()) return std::nullopt;
    std::vector<Expr> x(n);
    for (std::size_t col = 0; col < n; ++col) x[col] = b[piv_row[col]];
    return x;
}

LinSolveResult solve_linear(const std::vector<Expr>& eqs, const std::vector<Var>& unknowns) {
    const int n = static_cast<int>(unknowns.size());
    auto index_of = [&](Var v) -> int {
        for (int k = 0; k < n; ++k)
            if (unknowns[static_cast<std::size_t>(k)] == v) return k;
        return -1;
    };
    // rows of Expr coefficients, last entry is the right-hand side
    std::vector<std::vector<Expr>> rows;
    bool numeric = true;
    for (auto& e : eqs) {
        if (e.is_zero()) continue;
        for (Var w : e.den().variables())
            if (index_of(w) >= 0 || (is_log_atom(w) && [&] {
                    for (Var u : unknowns)
                        if (log_argument(w).depends_on(u)) return true;
                    return false;
                }()))
                throw NotLinear("unknown in denominator: " + e.str());
        std::vector<Expr> row(static_cast<std::size_t>(n) + 1);
        for (auto& [m, c] : e.num().coefficients_in(unknowns)) {
            Expr ce = Expr::fraction(c, e.den());
            if (m.is_one()) {
                row[static_cast<std::size_t>(n)] = -ce;
            } else if (m.degree() == 1 && m.factors().size() == 1) {
                row[static_cast<std::size_t>(index_of(m.factors()[0].first))] = ce;
            } else {
                throw NotLinear("nonlinear term " + m.str() + " in " + e.str());
            }
        }
        for (auto& x : row)
            if (!x.is_constant()) numeric = false;
        rows.push_back(std::move(row));
    }

    LinSolveResult res;
    std::vector<int> pivots;
    std::vector<std::vector<Expr>> reduced;
    if (numeric) {
        std::vector<SparseRow> sr;
        for (auto& row : rows) {
            SparseRow s;
            for (int k = 0; k <= n; ++k)
                if (!row[static_cast<std::size_t>(k)].is_zero())
                    s.emplace_back(k, row[static_cast<std::size_t>(k)].constant_value());
            sr.push_back(std::move(s));
        }
        Rref r = rref(std::move(sr), n);
        if (r.inconsistent) {
            res.status = SolveStatus::inconsistent;
            Rref again = r;
            // recover a witness constant from the unreduced remainder
            for (auto& row : rows) {
                SparseRow s;
                for (int k = 0; k <= n; ++k)
                    if (!row[static_cast<std::size_t>(k)].is_zero())
                        s.emplace_back(k, row[static_cast<std::size_t>(k)].constant_value());
                for (std::size_t p = 0; p < again.rows.size(); ++p) {
                    const GQ* v = find_col(s, again.pivots[p]);
                    if (v) s = axpy(s, *v, again.rows[p]);
                }
                if (!s.empty() && s.front().first == n) {
                    res.witness = Expr(-s.front().second);
                    break;
                }
            }
            return res;
        }
        pivots = r.pivots;
        for (auto& row : r.rows) {
            std::vector<Expr> d(static_cast<std::size_t>(n) + 1);
            for (auto& [c, v] : row) d[static_cast<std::size_t>(c)] = Expr(v);
            reduced.push_back(std::move(d));
        }
    } else {
        std::vector<bool> used(rows.size(), false);
        std::vector<std::size_t> pivot_rows;
        for (int col = 0; col < n; ++col) {
            std::size_t best = rows.size();
            auto cost = [&](const Expr& e) {
                return (e.is_constant() ? 0 : 1000000) + static_cast<long>(e.num().size() + e.den().size());
            };
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (used[r] || rows[r][static_cast<std::size_t>(col)].is_zero()) continue;
                if (best == rows.size() || cost(rows[r][static_cast<std::size_t>(col)]) < cost(rows[best][static_cast<std::size_t>(col)]))
                    best = r;
            }
            if (best == rows.size()) continue;
            used[best] = true;
            Expr inv = rows[best][static_cast<std::size_t>(col)].inverse();
            for (auto& e : rows[best]) e = e * inv;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == best || rows[r][static_cast<std::size_t>(col)].is_zero()) continue;
                Expr s = rows[r][static_cast<std::size_t>(col)];
                for (int c = 0; c <= n; ++c)
                    if (!rows[best][static_cast<std::size_t>(c)].is_zero())
                        rows[r][static_cast<std::size_t>(c)] -= s * rows[best][static_cast<std::size_t>(c)];
            }
            pivots.push_back(col);
            pivot_rows.push_back(best);
        }
        for (auto r : pivot_rows) reduced.push_back(rows[r]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r]) continue;
            if (!rows[r][static_cast<std::size_t>(n)].is_zero()) {
                res.status = SolveStatus::inconsistent;
                res.witness = -rows[r][static_cast<std::size_t>(n)];
                return res;
            }
        }
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    for (int k = 0; k < n; ++k)
        if (!is_pivot[static_cast<std::size_t>(k)]) res.free.push_back(unknowns[static_cast<std::size_t>(k)]);
    std::vector<std::pair<int, Expr>> assign;
    for (std::size_t r = 0; r < reduced.size(); ++r) {
        Expr val = reduced[r][static_cast<std::size_t>(n)];
        for (int k = 0; k < n; ++k)
            if (!is_pivot[static_cast<std::size_t>(k)] && !reduced[r][static_cast<std::size_t>(k)].is_zero())
                val -= reduced[r][static_cast<std::size_t>(k)] * Expr::variable(unknowns[static_cast<std::size_t>(k)]);
        assign.emplace_back(pivots[r], val);
    }
    std::sort(assign.begin(), assign.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, v] : assign) res.assignments.emplace_back(unknowns[static_cast<std::size_t>(k)], v);
    res.status = res.free.empty() ? SolveStatus::unique : SolveStatus::parametrized;
    return res;
}

}  // namespace jlq

namespace jlq {

std::vector<SparseRow> identity_rows(const std::vector<Expr>& e) {
    Poly l(1);
    for (auto& x : e) {
        if (x.is_zero() || x.is_polynomial()) continue;
        Poly g = gcd(l, x.den());
        l = l * *divide_exact(x.den(), g);
    }
    std::unordered_map<Monomial, SparseRow, MonomialHash> rows;
    std::vector<Monomial> order;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j].is_zero()) continue;
        Poly n = e[j].num() * *divide_exact(l, e[j].den());
        for (auto& t : n.terms()) {
            auto it = rows.find(t.m);
            if (it == rows.end()) {
                it = rows.emplace(t.m, SparseRow{}).first;
                order.push_back(t.m);
            }
            it->second.emplace_back(static_cast<int>(j), t.c);
        }
    }
    std::sort(order.begin(), order.end(), [](const Monomial& a, const Monomial& b) { return rank_order_compare(a, b) > 0; });
    std::vector<SparseRow> out;
    out.reserve(order.size());
    for (auto& m : order) out.push_back(std::move(rows[m]));
    return out;
}

std::optional<std::vector<GQ>> constant_combination(const std::vector<std::vector<Expr>>& columns,
                                                    const std::vector<Expr>& target) {
    int n = static_cast<int>(columns.size());
    std::vector<SparseRow> all;
    for (std::size_t k = 0; k < target.size(); ++k) {
        std::vector<Expr> e;
        for (auto& c : columns) e.push_back(c[k]);
        e.push_back(target[k]);
        for (auto& r : identity_rows(e)) all.push_back(std::move(r));
    }
    // column n is the target, read as the right-hand side: sum_j a_j c_j = a_n
    Rref r = rref(std::move(all), n);
    if (r.inconsistent) return std::nullopt;
    std::vector<GQ> c(static_cast<std::size_t>(n), GQ(0));
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const GQ* v = find_col(r.rows[k], n);
        if (v) c[static_cast<std::size_t>(r.pivots[k])] = *v;
    }
    return c;
}

}  // namespace jlq
