#include "jlq_cli/app.hpp"

#include "jlq_cli/stages.hpp"

#include "jlq/parser.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>

namespace jlq::cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    std::ostringstream o;
    o << std::hex;
    o.width(16);
    o.fill('0');
    o << v;
    return o.str();
}

// Stage reports stored next to the problem file, keyed by a hash of the
// file content, the stage options and the input report.
class Cache {
public:
    Cache(std::filesystem::path problem, std::string raw, bool enabled)
        : path_(problem.string() + ".cache.json"), raw_(std::move(raw)), enabled_(enabled) {
        if (!enabled_) return;
        std::ifstream in(path_);
        if (!in) return;
        try {
            data_ = json::parse(in);
        } catch (const json::exception&) {
            data_ = json::object();
        }
        if (!data_.is_object()) data_ = json::object();
    }

    json stage(const std::string& name, const std::string& opts, const json& input, const std::function<json()>& compute) {
        std::string key = hex(fnv1a(raw_ + '\x1f' + name + '\x1f' + opts + '\x1f' + input.dump()));
        if (enabled_ && data_.contains(name) && data_[name].value("hash", "") == key) return data_[name]["report"];
        json r = compute();
        if (enabled_) {
            data_[name] = {{"hash", key}, {"report", r}};
            std::ofstream out(path_);
            if (out) out << data_.dump(1) << "\n";
        }
        return r;
    }

private:
    std::string path_;
    std::string raw_;
    bool enabled_;
    json data_ = json::object();
};

enum class Target { symmetries, multipliers, lagrangians, noether, quantize, pipeline };

struct Flags {
    std::string file;
    bool json_out = false;
    int degree = -1;
    bool allow_log = false;
    bool verify_only = false;
    std::string xi;
    bool no_cache = false;
};

bool looks_like_label(const Problem& p, const std::string& s) {
    if (p.lagrangians.count(s)) return true;
    return s.size() > 1 && s[0] == 'L' && s.find_first_of("*+-/^ ") == std::string::npos;
}

json execute(Target target, Problem& p, Cache& cache, const Flags& f) {
    if (f.degree >= 0) {
        switch (target) {
        case Target::symmetries: p.search_degree = f.degree; break;
        case Target::lagrangians:
        case Target::noether: p.gauge_degree = f.degree; break;
        default: p.ansatz_degree = f.degree;
        }
    }
    if (f.allow_log) p.allow_log = true;
    if (!f.xi.empty()) {
        try {
            parse(f.xi, VarCtx::pde());
        } catch (const ParseError& e) {
            throw ConfigError(std::string("--xi: ") + e.what());
        }
        p.xi = f.xi;
    }

    json stages = json::array();
    auto done = [&](const json& r) {
        stages.push_back(r);
        return status_code(r) != 0 || r["status"] == "empty";
    };
    auto finish = [&]() -> json {
        if (target != Target::pipeline) return stages.back();
        json out{{"problem", p.name}, {"stages", stages}};
        const json& last = stages.back();
        out["status"] = last["status"];
        if (last.contains("message")) out["message"] = last["message"];
        return out;
    };

    bool search = target == Target::symmetries || (target == Target::pipeline && !f.verify_only);
    bool verify_only_syms = !search || (target == Target::symmetries && f.verify_only);
    std::string sopt = verify_only_syms ? "verify" : "search:" + std::to_string(p.search_degree);
    if (done(cache.stage("symmetries", sopt, json(), [&] { return stage_symmetries(p, verify_only_syms); }))) return finish();
    if (target == Target::symmetries) return finish();

    json noether;
    bool by_expr = target == Target::quantize && !p.lagrangian.empty() && !looks_like_label(p, p.lagrangian);
    if (!by_expr) {
        json m = cache.stage("multipliers", "", json(), [&] { return stage_multipliers(p); });
        if (done(m) || target == Target::multipliers) return finish();
        std::string g = std::to_string(p.gauge_degree);
        json l = cache.stage("lagrangians", g, m, [&] { return stage_lagrangians(p, m); });
        if (done(l) || target == Target::lagrangians) return finish();
        noether = cache.stage("noether", g, l, [&] { return stage_noether(p, l); });
        if (done(noether) || target == Target::noether) return finish();
        if (target == Target::pipeline && p.transformation)
            if (done(cache.stage("transformation", "", json(), [&] { return stage_transformation(p); }))) return finish();
    }
    std::ostringstream qopt;
    qopt << p.lagrangian << '|' << p.schrodinger_mode << '|' << p.ansatz_degree << '|' << p.allow_log << '|' << p.max_depth
         << '|' << p.xi.value_or("") << '|' << f.verify_only;
    stages.push_back(cache.stage("quantize", qopt.str(), noether, [&] { return stage_quantize(p, noether, f.verify_only); }));
    return finish();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jacobi last multiplier, Lagrangian, Noether and quantization pipeline"};
    app.require_subcommand(1);
    Flags f;
    std::vector<std::pair<CLI::App*, Target>> subs;
    auto add = [&](const char* name, const char* help, Target t) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("problem", f.file, "problem file (JSON)")->required();
        sc->add_flag("--json", f.json_out, "emit the JSON report");
        sc->add_option("--degree", f.degree, "search, gauge or ansatz degree of the stage");
        sc->add_flag("--allow-log", f.allow_log, "log(t), log(x) atoms in the lambda ansatz");
        sc->add_flag("--verify-only", f.verify_only, "check the given data without searching");
        sc->add_option("--xi", f.xi, "characteristic coordinate to verify and use");
        sc->add_flag("--no-cache", f.no_cache, "ignore and do not write the stage cache");
        subs.emplace_back(sc, t);
    };
    add("symmetries", "verify the listed point symmetries and search for more", Target::symmetries);
    add("multipliers", "Jacobi last multipliers from all symmetry pairs", Target::multipliers);
    add("lagrangians", "Lagrangians from the multipliers", Target::lagrangians);
    add("noether", "Noether symmetries and first integrals of each Lagrangian", Target::noether);
    add("quantize", "linear PDE preserving the Noether symmetries, and its reduction", Target::quantize);
    add("pipeline", "all stages chained", Target::pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    Target target = Target::pipeline;
    for (auto& [sc, t] : subs)
        if (sc->parsed()) target = t;

    try {
        std::string raw;
        Problem p = load_problem(f.file, &raw);
        Cache cache(f.file, raw, !f.no_cache);
        json report = execute(target, p, cache, f);
        if (f.json_out)
            out << report.dump(2) << "\n";
        else
            out << render(report);
        return status_code(report);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "verification failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace jlq::cli
