#include "jlq/noether.hpp"

#include "jlq/linear_solve.hpp"

#include <stdexcept>

namespace jlq {

namespace {

Expr noether_lhs(const Lagrangian& l, const PointSymmetry& s, const Ode2& ode) {
    Expr eta1 = prolong(s, ode).eta1;
    return apply_field(s, l.l) + eta1 * diff(l.l, vars::qd()) + l.l * total_derivative_free(s.v);
}

std::vector<Expr> gauge_columns(const std::vector<Expr>& basis) {
    std::vector<Expr> out;
    for (auto& f : basis) out.push_back(total_derivative_free(f));
    return out;
}

}  // namespace

NoetherResult noether_test(const Lagrangian& l, const PointSymmetry& s, const Ode2& ode, int gauge_bound) {
    Expr lhs = noether_lhs(l, s, ode);
    auto basis = gauge_ansatz(l.l.has_log_atoms(), gauge_bound);
    std::vector<std::vector<Expr>> cols;
    for (auto& d : gauge_columns(basis)) cols.push_back({d});
    NoetherResult r;
    auto c = constant_combination(cols, {lhs});
    if (!c) {
        r.unresolved = lhs;
        return r;
    }
    Expr g;
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (!(*c)[j].is_zero()) g += Expr((*c)[j]) * basis[j];
    NoetherCertificate cert{s, g, Expr()};
    cert.integral = first_integral(cert, l, ode);
    r.certificate = std::move(cert);
    return r;
}

Expr first_integral(const NoetherCertificate& cert, const Lagrangian& l, const Ode2& ode) {
    const auto& s = cert.symmetry;
    Expr qd = Expr::variable(vars::qd());
    Expr i = (qd * s.v - s.g) * diff(l.l, vars::qd()) - s.v * l.l + cert.gauge;
    if (!total_derivative(i, ode).is_zero()) throw std::logic_error("Noether integral is not conserved: " + i.str());
    return i;
}

std::string combination_label(const std::vector<GQ>& c, const std::vector<PointSymmetry>& syms) {
    std::string out;
    for (std::size_t j = 0; j < syms.size(); ++j) {
        if (c[j].is_zero()) continue;
        GQ a = c[j];
        bool neg = a.sign() < 0;
        if (neg) a = -a;
        if (!out.empty() || neg) out += neg ? "-" : "+";
        if (!a.is_one()) out += a.str() + "*";
        out += syms[j].label;
    }
    return out.empty() ? "0" : out;
}

std::vector<SpectrumEntry> noether_spectrum(const std::vector<Lagrangian>& ls, const std::vector<PointSymmetry>& syms,
                                            const Ode2& ode, int gauge_bound) {
    std::vector<SpectrumEntry> out;
    std::size_t best = 0;
    int n = static_cast<int>(syms.size());
    for (auto& l : ls) {
        SpectrumEntry e;
        e.lagrangian = l.provenance;
        auto basis = gauge_ansatz(l.l.has_log_atoms(), gauge_bound);
        std::vector<Expr> cols;
        for (auto& s : syms) cols.push_back(noether_lhs(l, s, ode));
        for (auto& d : gauge_columns(basis)) cols.push_back(-d);
        int total = static_cast<int>(cols.size());
        auto ns = nullspace(rref(identity_rows(cols), total), total);
        // project onto the generator coefficients and reduce
        std::vector<SparseRow> proj;
        for (auto& v : ns) {
            SparseRow row;
            for (int j = 0; j < n; ++j)
                if (!v[static_cast<std::size_t>(j)].is_zero()) row.emplace_back(j, v[static_cast<std::size_t>(j)]);
            if (!row.empty()) proj.push_back(std::move(row));
        }
        Rref r = rref(std::move(proj), n);
        for (auto& row : r.rows) {
            std::vector<GQ> c(static_cast<std::size_t>(n), GQ(0));
            for (auto& [j, v] : row) c[static_cast<std::size_t>(j)] = v;
            PointSymmetry s = linear_combination(c, syms, combination_label(c, syms));
            auto t = noether_test(l, s, ode, gauge_bound);
            if (!t.certificate) throw std::logic_error("spectrum element " + s.label + " failed the Noether test");
            e.certificates.push_back(std::move(*t.certificate));
        }
        best = std::max(best, e.certificates.size());
        out.push_back(std::move(e));
    }
    for (auto& e : out) e.physical_candidate = best > 0 && e.certificates.size() == best;
    return out;
}

}  // namespace jlq
