#include "jlq_cli/stages.hpp"

#include <sstream>

namespace jlq::cli {

namespace {

std::string s(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

// wrap sums so that "a + b d/dt" reads unambiguously
std::string term(const json& j) {
    std::string e = s(j);
    if (e.find_first_of("+-", 1) == std::string::npos) return e;
    return "(" + e + ")";
}

std::string yes(const json& j) { return j.get<bool>() ? "yes" : "no"; }

std::string joined(const json& arr, const char* sep = ", ") {
    std::string out;
    for (auto& e : arr) out += (out.empty() ? "" : sep) + s(e);
    return out;
}

void analysis(std::ostream& o, const json& a, const char* in) {
    o << in << "class: " << s(a["class"]) << "\n";
    if (a.contains("xi")) {
        o << in << "xi = " << s(a["xi"]) << " (" << s(a["xi_source"]) << ", "
          << (a["xi_verified"].get<bool>() ? "verified" : "NOT characteristic") << ")\n";
    }
    if (a.contains("xi_error")) o << in << "characteristic: " << s(a["xi_error"]) << "\n";
    if (a.contains("reduction_error")) o << in << "normal form: " << s(a["reduction_error"]) << "\n";
    if (a.contains("normal_form")) o << in << "normal form: " << s(a["normal_form"]) << "\n";
    if (a.contains("indicial")) o << in << "indicial equation: " << s(a["indicial"]) << "\n";
    if (a.contains("solution_note")) o << in << "solution: " << s(a["solution_note"]) << "\n";
    if (a.contains("exponents")) {
        o << in << "exponents: " << joined(a["exponents"]) << (a["repeated_root"].get<bool>() ? " (repeated)" : "") << "\n";
        o << in << "phi = " << s(a["basis"]) << "\n";
        o << in << "back-substitution: " << (a["back_substitution"].get<bool>() ? "passed" : "FAILED") << "\n";
    }
}

void symmetry_rows(std::ostream& o, const json& rows, const char* in) {
    for (auto& r : rows) {
        o << in << s(r["symmetry"]) << ": lambda = " << s(r["lambda"]) << (r["verified"].get<bool>() ? "" : "  FAILED")
          << "\n";
        if (r.contains("residual"))
            for (auto& [k, v] : r["residual"].items()) o << in << "  residual " << k << ": " << s(v) << "\n";
    }
}

void stage(std::ostream& o, const json& r) {
    const std::string name = r["stage"];
    o << "== " << name << ": " << s(r["problem"]) << " [" << s(r["status"]) << "] ==\n";
    if (name == "symmetries") {
        o << s(r["ode"]) << "\n";
        for (auto& g : r["generators"]) {
            o << "  " << s(g["label"]) << ": V = " << s(g["v"]) << ", G = " << s(g["g"]) << "  "
              << (g["verified"].get<bool>() ? "verified" : "FAILED") << "\n";
            if (g.contains("residual")) o << "    residual: " << s(g["residual"]) << "\n";
        }
        if (r.contains("search")) {
            auto& sr = r["search"];
            o << "search (degree " << s(sr["degree"]) << "): " << s(sr["dimension"]) << " generators\n";
            if (!sr["in_span"].empty()) o << "  in span: " << joined(sr["in_span"]) << "\n";
            if (!sr["outside_span"].empty()) o << "  outside span: " << joined(sr["outside_span"]) << "\n";
        }
    } else if (name == "multipliers") {
        for (auto& p : r["pairs"]) {
            o << "  " << s(p["pair"]) << ": ";
            if (p["degenerate"].get<bool>())
                o << "degenerate";
            else if (p.contains("duplicate_of"))
                o << s(p["multiplier"]) << " = " << s(p["factor"]) << " * " << s(p["duplicate_of"]);
            else
                o << s(p["label"]) << " = " << s(p["multiplier"]);
            o << "\n";
        }
        o << "degenerate pairs: " << s(r["degenerate"]) << "\n";
        o << "distinct multipliers: " << r["multipliers"].size() << "\n";
        for (auto& m : r["multipliers"])
            if (!m["verified"].get<bool>()) o << "  " << s(m["label"]) << " FAILED, residual " << s(m["residual"]) << "\n";
    } else if (name == "lagrangians") {
        for (auto& l : r["lagrangians"]) {
            o << "  " << s(l["label"]) << " = " << s(l["lagrangian"]) << "\n";
            o << "    source " << s(l["source"]) << ", Euler-Lagrange " << yes(l["euler_lagrange"]);
            if (l.contains("recovers_multiplier")) o << ", recovers multiplier " << yes(l["recovers_multiplier"]);
            if (l.contains("gauge_matches"))
                for (auto& m : l["gauge_matches"]) o << ", gauge equivalent to " << s(m["factor"]) << "*" << s(m["label"]);
            o << "\n";
        }
        for (auto& f : r["failures"]) o << "  " << s(f["multiplier"]) << ": " << s(f["error"]) << "\n";
        o << "gauge-equivalent pairs: " << (r["gauge_equivalent_pairs"].empty() ? "none" : joined(r["gauge_equivalent_pairs"]))
          << " (" << s(r["pairs_checked"]) << " checked)\n";
    } else if (name == "noether") {
        for (auto& l : r["lagrangians"]) {
            o << "  " << s(l["label"]) << ": " << s(l["count"]) << " Noether symmetries"
              << (l["physical_candidate"].get<bool>() ? "  [physical candidate]" : "") << "\n";
            for (auto& c : l["certificates"])
                o << "    " << s(c["symmetry"]) << ": g = " << s(c["gauge"]) << ", I = " << s(c["integral"])
                  << (c["conserved"].get<bool>() ? "" : "  NOT CONSERVED") << "\n";
        }
        o << "physical candidates: " << joined(r["physical_candidates"]) << "\n";
    } else if (name == "transformation") {
        if (r.contains("pair")) {
            o << "  T = " << s(r["t_new"]) << ", X = " << s(r["x_new"]) << "\n";
            for (auto& [k, v] : r["images"].items()) o << "  " << k << " -> " << term(v[0]) << " d/dT + " << term(v[1]) << " d/dX\n";
            o << "  straightens pair: " << yes(r["straightens"]) << "\n";
            o << "  transformed: " << s(r["transformed"]) << "\n";
            if (r.contains("target")) o << "  target " << s(r["target"]) << ": " << (r["target_matches"].get<bool>() ? "matches" : "MISMATCH") << "\n";
        }
    } else if (name == "quantize") {
        o << "Lagrangian " << s(r["lagrangian"]) << " = " << s(r["lagrangian_expr"]) << "\n";
        o << "mode " << s(r["mode"]) << ", ansatz degree " << s(r["ansatz_degree"]) << (r["allow_log"].get<bool>() ? ", with logs" : "")
          << "\n";
        for (auto& g : r["generators"]) o << "  " << s(g["label"]) << ": " << term(g["xi_t"]) << " d/dt + " << term(g["xi_x"]) << " d/dx\n";
        if (r.contains("verified_pde")) {
            auto& b = r["verified_pde"];
            o << "given: " << s(b["pde"]) << "\n";
            symmetry_rows(o, b["symmetries"], "  ");
            analysis(o, b, "  ");
        }
        if (r.contains("equations"))
            o << "determining system: " << s(r["equations"]) << " equations, " << s(r["unknowns"]) << " unknowns, "
              << s(r["splits"]) << " case splits\n";
        if (r.contains("branches")) {
            int k = 0;
            for (auto& b : r["branches"]) {
                auto& f = b["family"];
                auto& rep = b["representative"];
                o << "branch " << ++k << ": " << s(f["pde"]) << "\n";
                if (!f["free"].empty()) o << "  free: " << joined(f["free"]) << "\n";
                if (!f["conditions"].empty()) o << "  conditions: " << joined(f["conditions"]) << "\n";
                o << "  representative: " << s(rep["pde"]) << "\n";
                symmetry_rows(o, rep["symmetries"], "    ");
                analysis(o, rep, "    ");
            }
        }
        if (r.contains("unresolved"))
            for (auto& u : r["unresolved"]) o << "  unresolved: " << s(u) << "\n";
    }
    if (r.contains("message")) o << s(r["message"]) << "\n";
}

}  // namespace

std::string render(const json& report) {
    std::ostringstream o;
    if (report.contains("stages")) {
        for (auto& st : report["stages"]) stage(o, st);
        o << "pipeline: " << s(report["status"]) << "\n";
    } else {
        stage(o, report);
    }
    return o.str();
}

}  // namespace jlq::cli
