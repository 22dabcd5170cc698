#include "jlq/symbol.hpp"

#include "jlq/expr.hpp"

#include <array>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace jlq {

namespace {

constexpr std::array<const char*, 7> kStandard = {"t", "q", "qd", "qdd", "x", "psi", "xi"};

struct Entry {
    std::string name;
    int rank;  // index into kStandard, 100 for other names, 200 for log atoms
    std::shared_ptr<const Expr> arg;
};

class SymbolTable {
public:
    SymbolTable() {
        for (auto* n : kStandard) intern(n, nullptr);
    }

    Var intern(std::string_view name, const Expr* arg) {
        {
            std::shared_lock lock(mu_);
            auto it = index_.find(std::string(name));
            if (it != index_.end()) return it->second;
        }
        std::unique_lock lock(mu_);
        auto it = index_.find(std::string(name));
        if (it != index_.end()) return it->second;
        Entry e{std::string(name), 100, nullptr};
        for (std::size_t k = 0; k < kStandard.size(); ++k)
            if (name == kStandard[k]) e.rank = static_cast<int>(k);
        if (arg) {
            e.rank = 200;
            e.arg = std::make_shared<const Expr>(*arg);
        }
        Var id = static_cast<Var>(entries_.size());
        entries_.push_back(std::move(e));
        index_.emplace(std::string(name), id);
        return id;
    }

    const Entry& get(Var v) const {
        std::shared_lock lock(mu_);
        if (v >= entries_.size()) throw std::out_of_range("unknown variable id");
        return entries_[v];
    }

private:
    mutable std::shared_mutex mu_;
    std::deque<Entry> entries_;
    std::unordered_map<std::string, Var> index_;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

Var sym(std::string_view name) {
    if (name.rfind("log(", 0) == 0) throw std::invalid_argument("log atoms must be created from an argument");
    return table().intern(name, nullptr);
}

const std::string& sym_name(Var v) { return table().get(v).name; }

bool is_log_atom(Var v) { return table().get(v).arg != nullptr; }

const Expr& log_argument(Var v) {
    const Entry& e = table().get(v);
    if (!e.arg) throw std::logic_error(e.name + " is not a log atom");
    return *e.arg;
}

Var log_atom(const Expr& arg) { return table().intern("log(" + arg.str() + ")", &arg); }

int rank_compare(Var a, Var b) {
    if (a == b) return 0;
    const Entry& ea = table().get(a);
    const Entry& eb = table().get(b);
    if (ea.rank != eb.rank) return ea.rank < eb.rank ? -1 : 1;
    return ea.name.compare(eb.name) < 0 ? -1 : 1;
}

namespace vars {
Var t() { return 0; }
Var q() { return 1; }
Var qd() { return 2; }
Var qdd() { return 3; }
Var x() { return 4; }
Var psi() { return 5; }
Var xi() { return 6; }
}  // namespace vars

}  // namespace jlq
