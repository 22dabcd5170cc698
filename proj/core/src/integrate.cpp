#include "jlq/integrate.hpp"

#include "jlq/linear_solve.hpp"

#include <algorithm>

namespace jlq {

namespace {

using Uni = std::vector<Expr>;  // coefficient of v^k at index k

void trim(Uni& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

int deg(const Uni& u) { return static_cast<int>(u.size()) - 1; }

Uni to_uni(const Poly& p, Var v) {
    Uni u;
    for (auto& [k, c] : p.coefficients_in(v)) {
        if (k < 0) throw std::logic_error("negative power in canonical polynomial");
        if (u.size() <= static_cast<std::size_t>(k)) u.resize(static_cast<std::size_t>(k) + 1);
        u[static_cast<std::size_t>(k)] = Expr(c);
    }
    trim(u);
    return u;
}

Uni mul(const Uni& a, const Uni& b) {
    if (a.empty() || b.empty()) return {};
    Uni r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// a = q*b + r
std::pair<Uni, Uni> divmod(Uni a, const Uni& b) {
    Uni q;
    if (deg(a) >= deg(b)) q.resize(static_cast<std::size_t>(deg(a) - deg(b)) + 1);
    Expr inv = b.back().inverse();
    while (!a.empty() && deg(a) >= deg(b)) {
        int s = deg(a) - deg(b);
        Expr c = a.back() * inv;
        q[static_cast<std::size_t>(s)] = c;
        for (int k = 0; k <= deg(b); ++k) a[static_cast<std::size_t>(k + s)] -= c * b[static_cast<std::size_t>(k)];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

Uni monic(const Uni& u) {
    Expr inv = u.back().inverse();
    Uni r = u;
    for (auto& c : r) c = c * inv;
    return r;
}

Uni uni_gcd(Uni a, Uni b) {
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Uni derivative(const Uni& u) {
    Uni d;
    for (std::size_t k = 1; k < u.size(); ++k) d.push_back(u[k] * Expr(static_cast<long>(k)));
    trim(d);
    return d;
}

std::optional<Expr> expr_sqrt(const Expr& e) {
    auto n = poly_sqrt(e.num());
    auto d = poly_sqrt(e.den());
    if (!n || !d) return std::nullopt;
    return Expr::fraction(*n, *d);
}

// Roots r of a monic squarefree polynomial that splits into linear factors.
std::vector<Expr> linear_roots(const Uni& f, const std::string& term) {
    if (deg(f) == 1) return {-f[0]};
    if (deg(f) == 2) {
        Expr b = f[1], c = f[0];
        Expr disc = b * b - Expr(4) * c;
        auto s = expr_sqrt(disc);
        if (!s) throw UnsupportedIntegrand(term, "denominator does not split into linear factors");
        Expr half = Expr::rational(1, 2);
        return {(-b + *s) * half, (-b - *s) * half};
    }
    throw UnsupportedIntegrand(term, "denominator of degree > 2 after factoring");
}

}  // namespace

Expr integrate_power(const Expr& e, Var v) {
    if (e.is_zero()) return Expr();
    Expr vv = Expr::variable(v);
    if (!e.depends_on(v)) return e * vv;

    // v-dependent log atoms
    std::vector<Var> logs;
    for (Var w : e.variables())
        if (w != v && is_log_atom(w) && log_argument(w).depends_on(v)) logs.push_back(w);
    for (Var w : e.den().variables())
        if (std::find(logs.begin(), logs.end(), w) != logs.end())
            throw UnsupportedIntegrand(e.str(), "log atom in the denominator");

    Expr result;
    Poly rational_num;
    for (auto& [m, c] : e.num().coefficients_in(logs)) {
        if (m.is_one()) {
            rational_num = c;
            continue;
        }
        Expr coeff = Expr::fraction(c, e.den());
        std::string term = "(" + coeff.str() + ")*" + m.str();
        if (m.degree() != 1 || m.factors().size() != 1) throw UnsupportedIntegrand(term, "product of logarithms");
        if (coeff.depends_on(v)) throw UnsupportedIntegrand(term, "log term with a v-dependent factor");
        Var atom = m.factors()[0].first;
        const Expr& w = log_argument(atom);
        Expr a = diff(w, v);
        if (a.depends_on(v)) throw UnsupportedIntegrand(term, "log argument is not linear in " + sym_name(v));
        result += coeff * (w / a) * (Expr::variable(atom) - Expr(1));
    }

    if (!rational_num.is_zero()) {
        std::string term = Expr::fraction(rational_num, e.den()).str();
        Uni num = to_uni(rational_num, v);
        Uni den = to_uni(e.den(), v);
        auto [quot, rem] = divmod(num, den);
        for (std::size_t k = 0; k < quot.size(); ++k)
            result += quot[k] * vv.pow(static_cast<int>(k) + 1) / Expr(static_cast<long>(k) + 1);
        if (!rem.empty()) {
            Expr lc = den.back();
            Uni dm = monic(den);
            Uni sqf = dm;
            Uni g = uni_gcd(dm, derivative(dm));
            if (deg(g) > 0) sqf = monic(divmod(dm, g).first);
            // split off v itself first
            std::vector<Expr> roots;
            std::size_t low = 0;
            while (low < sqf.size() && sqf[low].is_zero()) ++low;
            if (low > 0) {
                roots.push_back(Expr());
                sqf.erase(sqf.begin(), sqf.begin() + static_cast<long>(low));
            }
            if (deg(sqf) > 0) {
                auto more = linear_roots(sqf, term);
                roots.insert(roots.end(), more.begin(), more.end());
            }
            // multiplicities
            std::vector<int> mult;
            for (auto& r : roots) {
                Uni lin{-r, Expr(1)};
                Uni rest = dm;
                int k = 0;
                while (true) {
                    auto [q, rr] = divmod(rest, lin);
                    if (!rr.empty()) break;
                    rest = q;
                    ++k;
                }
                mult.push_back(k);
            }
            // basis polynomials B_ij = lc * D / (v - r_i)^j
            std::vector<Uni> basis;
            std::vector<std::pair<std::size_t, int>> labels;
            for (std::size_t i = 0; i < roots.size(); ++i) {
                for (int j = 1; j <= mult[i]; ++j) {
                    Uni b{lc};
                    for (std::size_t k = 0; k < roots.size(); ++k) {
                        int power = k == i ? mult[k] - j : mult[k];
                        for (int p = 0; p < power; ++p) b = mul(b, Uni{-roots[k], Expr(1)});
                    }
                    basis.push_back(b);
                    labels.emplace_back(i, j);
                }
            }
            std::size_t n = basis.size();
            std::size_t rows = static_cast<std::size_t>(deg(den));
            std::vector<std::vector<Expr>> a(rows, std::vector<Expr>(n));
            std::vector<Expr> b(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < n; ++c)
                    if (r < basis[c].size()) a[r][c] = basis[c][r];
                if (r < rem.size()) b[r] = rem[r];
            }
            auto sol = solve_dense(a, b);
            if (!sol) throw UnsupportedIntegrand(term, "partial fraction system is singular");
            for (std::size_t c = 0; c < n; ++c) {
                const Expr& coef = (*sol)[c];
                if (coef.is_zero()) continue;
                auto [i, j] = labels[c];
                Expr lin = vv - roots[i];
                if (j == 1) {
                    Expr w = Expr(lin.num().monic());
                    result += coef * Expr::log(w);
                } else {
                    result += coef * lin.pow(1 - j) / Expr(static_cast<long>(1 - j));
                }
            }
        }
    }

    if (diff(result, v) != e)
        throw std::logic_error("integrate_power self-check failed for " + e.str());
    return result;
}

}  // namespace jlq
