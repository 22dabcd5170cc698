#include "jlq_cli/stages.hpp"

#include "jlq/integrate.hpp"
#include "jlq/noether.hpp"
#include "jlq/parser.hpp"
#include "jlq/quantizer.hpp"

#include <algorithm>
#include <cctype>

namespace jlq::cli {

namespace {

const Var QD = vars::qd();

VarCtx ode_ctx() { return VarCtx{{"t", Role::independent}, {"q", Role::dependent}, {"qd", Role::jet}}; }

std::string str(const Expr& e) { return e.str(); }
std::string str(const GQ& c) { return Expr(c).str(); }

json fail(json r, const std::string& status) {
    r["status"] = status;
    return r;
}

// "13" for X1, X3; "(A,B)" otherwise
std::string pair_suffix(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        auto k = s.find_first_of("0123456789");
        return k == std::string::npos ? std::make_pair(s, std::string()) : std::make_pair(s.substr(0, k), s.substr(k));
    };
    auto [pa, da] = split(a);
    auto [pb, db] = split(b);
    bool digits = da.size() == 1 && db.size() == 1 && std::isdigit(da[0]) && std::isdigit(db[0]);
    if (pa == pb && digits) return da + db;
    return "(" + a + "," + b + ")";
}

struct Entry {
    std::string s1, s2;
    bool degenerate = false;
    Expr m;
    std::optional<std::size_t> duplicate_of;
    GQ factor{1};
};

std::vector<Entry> sweep(const Problem& p) {
    std::vector<Entry> out;
    if (p.pairs.empty()) {
        for (auto& e : multiplier_sweep(p.ode, p.symmetries))
            out.push_back({e.s1, e.s2, e.degenerate, e.m, e.duplicate_of, e.factor});
        return out;
    }
    for (auto& [a, b] : p.pairs) {
        auto r = jlm_from_pair(p.ode, p.symmetry(a), p.symmetry(b));
        Entry e{a, b, r.degenerate, r.degenerate ? Expr() : r.multiplier->m, std::nullopt, GQ(1)};
        if (!e.degenerate)
            for (std::size_t k = 0; k < out.size() && !e.duplicate_of; ++k) {
                if (out[k].degenerate || out[k].duplicate_of) continue;
                if (auto c = constant_ratio(e.m, out[k].m)) {
                    e.duplicate_of = k;
                    e.factor = *c;
                }
            }
        out.push_back(std::move(e));
    }
    return out;
}

template <class F>
void sort_by(json& arr, F key) {
    std::vector<json> v(arr.begin(), arr.end());
    std::stable_sort(v.begin(), v.end(), [&](const json& a, const json& b) {
        auto ka = key(a), kb = key(b);
        if (ka.first != kb.first) return natural_less(ka.first, kb.first);
        return ka.second < kb.second;
    });
    arr = json(v);
}

json analyse(const LinearPde2& pde, const Problem& p, bool& failed) {
    json a;
    PdeClass cls = classify(pde);
    a["class"] = class_name(cls);
    a["discriminant"] = str(discriminant(pde));
    if (cls != PdeClass::parabolic) return a;
    Expr xi;
    if (p.xi) {
        xi = parse(*p.xi, VarCtx::pde());
        a["xi"] = str(xi);
        a["xi_source"] = "user";
        bool ok = verify_characteristic(pde, xi);
        a["xi_verified"] = ok;
        if (!ok) {
            failed = true;
            return a;
        }
    } else {
        try {
            xi = characteristic_coordinate(pde);
        } catch (const NonSeparable& e) {
            a["xi_error"] = std::string(e.what()) + "; supply --xi";
            return a;
        }
        a["xi"] = str(xi);
        a["xi_source"] = "derived";
        a["xi_verified"] = true;
    }
    CharReduction red;
    try {
        red = to_normal_form(pde, xi);
    } catch (const std::invalid_argument& e) {
        a["reduction_error"] = e.what();
        return a;
    }
    a["normal_form"] = red.str();
    if (!red.phi_xi.is_zero()) {
        a["solution_note"] = "phi_xi term present, no closed-form basis";
        return a;
    }
    auto sol = solve_euler(red);
    if (!sol.euler) {
        a["solution_note"] = "not a Cauchy-Euler equation in x";
        return a;
    }
    if (!sol.closed) {
        Expr r = Expr::variable("r");
        a["indicial"] = str(sol.a * r * (r - 1) + sol.b * r + sol.c) + " = 0";
        a["solution_note"] = "indicial discriminant is not a perfect square";
        return a;
    }
    json ex = json::array();
    for (auto& r : sol.exponents) ex.push_back(str(r));
    a["exponents"] = ex;
    a["repeated_root"] = sol.repeated;
    a["basis"] = sol.basis();
    bool back = back_substitution_check(pde, red, sol);
    a["back_substitution"] = back;
    if (!back) failed = true;
    return a;
}

LinearPde2 pde_from_strings(const std::array<std::string, 6>& c, bool schrodinger) {
    LinearPde2 pde;
    for (int k = 0; k < 6; ++k) pde.c[k] = parse(c[k], VarCtx::pde());
    pde.schrodinger_mode = schrodinger;
    pde.validate();
    return pde;
}

json symmetry_table(const LinearPde2& pde, const std::vector<PdeSymmetry>& gens, const std::vector<Expr>& lams,
                    bool& failed) {
    json out = json::array();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        PdeSymmetry s = gens[k];
        s.lam = lams[k];
        bool ok = is_pde_symmetry(pde, s);
        if (!ok) failed = true;
        json row{{"symmetry", s.label}, {"xi_t", str(s.xi_t)}, {"xi_x", str(s.xi_x)}, {"lambda", str(s.lam)}, {"verified", ok}};
        if (!ok) {
            json res;
            for (auto& [k2, v] : pde_symmetry_residual(pde, s))
                if (!v.is_zero()) res[k2] = str(v);
            row["residual"] = res;
        }
        out.push_back(row);
    }
    // psi d/dpsi holds for every linear equation
    out.push_back({{"symmetry", "psi*d/dpsi"}, {"xi_t", "0"}, {"xi_x", "0"}, {"lambda", "1"},
                   {"verified", is_pde_symmetry(pde, PdeSymmetry{Expr(), Expr(), Expr(1), "psi"})}});
    return out;
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(a[i]) && std::isdigit(b[j])) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(a[i2])) ++i2;
            while (j2 < b.size() && std::isdigit(b[j2])) ++j2;
            std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
            nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

json stage_symmetries(const Problem& p, bool verify_only) {
    json r{{"stage", "symmetries"}, {"problem", p.name}, {"ode", "qdd = " + str(p.ode.rhs)}};
    json gens = json::array();
    bool failed = false;
    for (auto& s : p.symmetries) {
        auto chk = verify_point_symmetry(s, p.ode);
        json g{{"label", s.label}, {"v", str(s.v)}, {"g", str(s.g)}, {"verified", chk.ok}};
        if (!chk.ok) {
            g["residual"] = str(chk.residual);
            failed = true;
        }
        gens.push_back(g);
    }
    sort_by(gens, [](const json& g) { return std::make_pair(g["label"].get<std::string>(), g["v"].get<std::string>()); });
    r["generators"] = gens;
    if (!verify_only) {
        auto basis = find_point_symmetries(p.ode, p.search_degree);
        json b = json::array(), in = json::array(), out = json::array();
        for (auto& s : basis) b.push_back({{"v", str(s.v)}, {"g", str(s.g)}});
        for (auto& s : p.symmetries) (span_coordinates(basis, s) ? in : out).push_back(s.label);
        sort_by(in, [](const json& l) { return std::make_pair(l.get<std::string>(), std::string()); });
        sort_by(out, [](const json& l) { return std::make_pair(l.get<std::string>(), std::string()); });
        r["search"] = {{"degree", p.search_degree}, {"dimension", basis.size()}, {"basis", b}, {"in_span", in},
                       {"outside_span", out}};
    }
    r["status"] = failed ? "verification_failure" : "ok";
    return r;
}

json stage_multipliers(const Problem& p) {
    json r{{"stage", "multipliers"}, {"problem", p.name}};
    auto entries = sweep(p);
    json pairs = json::array(), ms = json::array();
    bool failed = false;
    int degenerate = 0;
    auto label = [&](std::size_t k) { return "M" + pair_suffix(entries[k].s1, entries[k].s2); };
    for (std::size_t k = 0; k < entries.size(); ++k) {
        auto& e = entries[k];
        json row{{"pair", e.s1 + "," + e.s2}, {"degenerate", e.degenerate}};
        if (e.degenerate) {
            ++degenerate;
        } else if (e.duplicate_of) {
            row["multiplier"] = str(e.m);
            row["duplicate_of"] = label(*e.duplicate_of);
            row["factor"] = str(e.factor);
        } else {
            row["multiplier"] = str(e.m);
            row["label"] = label(k);
            auto chk = verify_multiplier(p.ode, e.m);
            json m{{"label", label(k)}, {"pair", e.s1 + "," + e.s2}, {"m", str(e.m)}, {"verified", chk.ok}};
            if (!chk.ok) {
                m["residual"] = str(chk.residual);
                failed = true;
            }
            ms.push_back(m);
        }
        pairs.push_back(row);
    }
    sort_by(ms, [](const json& m) { return std::make_pair(m["label"].get<std::string>(), m["m"].get<std::string>()); });
    r["pairs"] = pairs;
    r["degenerate"] = degenerate;
    r["multipliers"] = ms;
    if (failed) return fail(r, "verification_failure");
    if (ms.empty()) {
        r["message"] = "no multipliers derivable";
        return fail(r, "empty");
    }
    r["status"] = "ok";
    return r;
}

json stage_lagrangians(const Problem& p, const json& multipliers) {
    json r{{"stage", "lagrangians"}, {"problem", p.name}, {"gauge_degree", p.gauge_degree}};
    json ls = json::array(), failures = json::array();
    bool failed = false;
    std::vector<std::pair<std::string, Expr>> all;
    for (auto& m : multipliers.value("multipliers", json::array())) {
        std::string ml = m["label"];
        std::string label = "L" + ml.substr(1);
        Multiplier mult{parse(m["m"].get<std::string>(), ode_ctx()), m["pair"]};
        try {
            auto l = lagrangian_from_multiplier(p.ode, mult, p.gauge_degree);
            bool el = euler_lagrange_consistent(l.l, p.ode);
            bool back = constant_ratio(diff(l.l, QD, 2), mult.m).has_value();
            if (!el || !back) failed = true;
            ls.push_back({{"label", label}, {"source", ml}, {"lagrangian", str(l.l)}, {"f1", str(l.f1)}, {"f3", str(l.f3)},
                          {"euler_lagrange", el}, {"recovers_multiplier", back}});
            all.emplace_back(label, l.l);
        } catch (const AnsatzInsufficient& e) {
            failures.push_back({{"multiplier", ml}, {"error", e.what()}, {"constraint", str(e.constraint())}});
        } catch (const UnsupportedIntegrand& e) {
            failures.push_back({{"multiplier", ml}, {"error", e.what()}});
        }
    }
    std::size_t derived = all.size();
    for (auto& [label, text] : p.lagrangians) {
        Expr l = parse(text, ode_ctx());
        bool el = euler_lagrange_consistent(l, p.ode);
        if (!el) failed = true;
        json matches = json::array();
        for (std::size_t k = 0; k < derived; ++k)
            if (auto c = gauge_equivalent_up_to_constant(l, all[k].second))
                matches.push_back({{"label", all[k].first}, {"factor", str(*c)}});
        ls.push_back({{"label", label}, {"source", "user"}, {"lagrangian", str(l)},
                      {"multiplier", str(diff(l, QD, 2))}, {"euler_lagrange", el}, {"gauge_matches", matches}});
        all.emplace_back(label, l);
    }
    json eq = json::array();
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b)
            if (gauge_equivalent(all[a].second, all[b].second)) eq.push_back(all[a].first + "," + all[b].first);
    sort_by(ls, [](const json& l) { return std::make_pair(l["label"].get<std::string>(), l["lagrangian"].get<std::string>()); });
    r["lagrangians"] = ls;
    r["failures"] = failures;
    r["gauge_equivalent_pairs"] = eq;
    r["pairs_checked"] = all.size() * (all.size() - 1) / 2;
    if (failed) return fail(r, "verification_failure");
    if (!failures.empty()) return fail(r, "ansatz_insufficient");
    if (ls.empty()) {
        r["message"] = "no Lagrangians";
        return fail(r, "empty");
    }
    r["status"] = "ok";
    return r;
}

namespace {

json spectrum_report(const Problem& p, const std::vector<Lagrangian>& ls, bool& failed) {
    json out = json::array();
    auto spectrum = noether_spectrum(ls, p.symmetries, p.ode, p.gauge_degree);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        auto& e = spectrum[k];
        json certs = json::array();
        for (auto& c : e.certificates) {
            bool conserved = total_derivative(c.integral, p.ode).is_zero();
            if (!conserved) failed = true;
            certs.push_back({{"symmetry", c.symmetry.label}, {"v", str(c.symmetry.v)}, {"g", str(c.symmetry.g)},
                             {"gauge", str(c.gauge)}, {"integral", str(c.integral)}, {"conserved", conserved}});
        }
        sort_by(certs, [](const json& c) { return std::make_pair(c["symmetry"].get<std::string>(), c["integral"].get<std::string>()); });
        out.push_back({{"label", e.lagrangian}, {"lagrangian", str(ls[k].l)}, {"count", e.certificates.size()},
                       {"physical_candidate", e.physical_candidate}, {"certificates", certs}});
    }
    sort_by(out, [](const json& l) { return std::make_pair(l["label"].get<std::string>(), l["lagrangian"].get<std::string>()); });
    return out;
}

}  // namespace

json stage_noether(const Problem& p, const json& lagrangians) {
    json r{{"stage", "noether"}, {"problem", p.name}, {"gauge_degree", p.gauge_degree}};
    std::vector<Lagrangian> ls;
    for (auto& l : lagrangians.value("lagrangians", json::array()))
        ls.push_back(lagrangian_from_expr(parse(l["lagrangian"].get<std::string>(), ode_ctx()), l["label"]));
    bool failed = false;
    r["lagrangians"] = spectrum_report(p, ls, failed);
    json phys = json::array();
    for (auto& l : r["lagrangians"])
        if (l["physical_candidate"].get<bool>()) phys.push_back(l["label"]);
    r["physical_candidates"] = phys;
    if (failed) return fail(r, "verification_failure");
    r["status"] = ls.empty() ? "empty" : "ok";
    return r;
}

json stage_transformation(const Problem& p) {
    json r{{"stage", "transformation"}, {"problem", p.name}};
    if (!p.transformation) return fail(r, "empty");
    auto& tr = *p.transformation;
    Expr tn = parse(tr.t_new, point_ctx()), xn = parse(tr.x_new, point_ctx());
    std::optional<Expr> target;
    if (tr.target) target = parse(*tr.target, ode_ctx());
    auto c = canonical_straightening_check(p.symmetry(tr.s1), p.symmetry(tr.s2), tn, xn, p.ode, target);
    r["pair"] = {tr.s1, tr.s2};
    r["t_new"] = str(tn);
    r["x_new"] = str(xn);
    json images;
    images[tr.s1] = {str(c.s1_t), str(c.s1_x)};
    images[tr.s2] = {str(c.s2_t), str(c.s2_x)};
    r["images"] = images;
    r["straightens"] = c.straightens;
    r["transformed"] = "qdd = " + str(c.transformed);
    if (target) {
        r["target"] = "qdd = " + str(*target);
        r["target_matches"] = c.target_matches;
    }
    r["status"] = c.ok ? "ok" : "verification_failure";
    return r;
}

json stage_quantize(const Problem& p, const json& noether, bool verify_only) {
    json r{{"stage", "quantize"}, {"problem", p.name}, {"mode", p.schrodinger_mode ? "schrodinger" : "general"},
           {"ansatz_degree", p.ansatz_degree}, {"allow_log", p.allow_log}};
    json entries = noether.is_null() ? json::array() : noether.value("lagrangians", json::array());
    std::string want = p.lagrangian;
    if (want.empty())
        for (auto& l : entries)
            if (l["physical_candidate"].get<bool>()) {
                want = l["label"];
                break;
            }
    if (want.empty()) throw ConfigError("no Lagrangian selected for quantization");
    json chosen;
    for (auto& l : entries)
        if (l["label"] == want) chosen = l;
    bool failed = false;
    if (chosen.is_null()) {
        Expr l = parse(want, ode_ctx());
        chosen = spectrum_report(p, {lagrangian_from_expr(l, want)}, failed)[0];
    }
    r["lagrangian"] = chosen["label"];
    r["lagrangian_expr"] = chosen["lagrangian"];

    std::vector<PdeSymmetry> gens;
    for (auto& c : chosen["certificates"])
        gens.push_back(lift(PointSymmetry(parse(c["v"].get<std::string>(), point_ctx()),
                                          parse(c["g"].get<std::string>(), point_ctx()), c["symmetry"]),
                            c["symmetry"]));
    json g = json::array();
    for (auto& s : gens) g.push_back({{"label", s.label}, {"xi_t", str(s.xi_t)}, {"xi_x", str(s.xi_x)}});
    r["generators"] = g;

    if (verify_only) {
        if (!p.pde) throw ConfigError("--verify-only needs 'pde' and 'lams' in the problem file");
        if (p.lams.size() != gens.size())
            throw ConfigError("'lams' must list one lambda per Noether generator (" + std::to_string(gens.size()) + ")");
        LinearPde2 pde = pde_from_strings(*p.pde, p.schrodinger_mode);
        std::vector<Expr> lams;
        for (auto& l : p.lams) lams.push_back(parse(l, VarCtx::pde()));
        json b{{"pde", pde.str()}, {"symmetries", symmetry_table(pde, gens, lams, failed)}};
        b.update(analyse(pde, p, failed));
        r["verified_pde"] = b;
        r["status"] = failed ? "verification_failure" : "ok";
        return r;
    }

    if (gens.empty()) {
        r["message"] = "the Lagrangian has no Noether point symmetries to preserve";
        return fail(r, "empty");
    }
    QuantizeOptions opt;
    opt.schrodinger_mode = p.schrodinger_mode;
    opt.degree = p.ansatz_degree;
    opt.allow_log = p.allow_log;
    opt.max_depth = p.max_depth;
    auto res = solve_determining(gens, opt);
    r["equations"] = res.equations;
    r["unknowns"] = res.unknowns;
    r["splits"] = res.splits;
    json unresolved = json::array();
    for (auto& u : res.unresolved) unresolved.push_back(u);
    r["unresolved"] = unresolved;

    json branches = json::array();
    for (auto& b : res.branches) {
        json fam{{"pde", b.pde.str()}};
        json fr = json::array(), nz = json::array(), cs = json::array(), lm = json::array();
        for (Var v : b.free) fr.push_back(sym_name(v));
        for (auto& e : b.nonzero) nz.push_back(str(e) + " != 0");
        for (auto& c : b.cases) cs.push_back(c);
        for (std::size_t k = 0; k < gens.size(); ++k) lm.push_back({{"symmetry", gens[k].label}, {"lambda", str(b.lams[k])}});
        fam["free"] = fr;
        fam["conditions"] = nz;
        fam["cases"] = cs;
        fam["lambdas"] = lm;

        auto rep = representative(b);
        LinearPde2 pde = rep.pde.cleared();
        json params = json::object();
        for (auto& [v, e] : rep.params) params[sym_name(v)] = str(e);
        json out{{"pde", pde.str()}, {"params", params}, {"symmetries", symmetry_table(pde, gens, rep.lams, failed)}};
        json coeff;
        for (int k = 0; k < 6; ++k) coeff[LinearPde2::slot_name(k)] = str(pde.c[k]);
        out["coefficients"] = coeff;
        out.update(analyse(pde, p, failed));
        branches.push_back({{"family", fam}, {"representative", out}});
    }
    sort_by(branches, [](const json& b) { return std::make_pair(std::string(), b["representative"]["pde"].get<std::string>()); });
    r["branches"] = branches;
    if (failed) return fail(r, "verification_failure");
    if (branches.empty()) {
        r["message"] = "ansatz insufficient: no consistent branch";
        return fail(r, "ansatz_insufficient");
    }
    r["status"] = "ok";
    return r;
}

int status_code(const json& report) {
    auto s = report.value("status", std::string("ok"));
    if (s == "verification_failure") return 1;
    if (s == "ansatz_insufficient") return 3;
    return 0;
}

}  // namespace jlq::cli
