#include "jlq/var_ctx.hpp"

#include <stdexcept>

namespace jlq {

const char* role_name(Role r) {
    switch (r) {
        case Role::independent: return "independent";
        case Role::dependent: return "dependent";
        case Role::jet: return "jet";
        case Role::auxiliary: return "auxiliary";
    }
    return "auxiliary";
}

VarCtx::VarCtx(std::initializer_list<std::pair<std::string, Role>> vars) {
    for (auto& [n, r] : vars) add(n, r);
}

VarCtx VarCtx::ode() {
    return {{"t", Role::independent}, {"q", Role::dependent}, {"qd", Role::jet}, {"qdd", Role::jet}};
}

VarCtx VarCtx::pde() {
    return {{"t", Role::independent}, {"x", Role::independent}, {"psi", Role::dependent}, {"xi", Role::auxiliary}};
}

VarCtx VarCtx::open() {
    VarCtx c;
    c.open_ = true;
    return c;
}

void VarCtx::add(std::string name, Role role) {
    if (name == "i" || name == "log") throw std::invalid_argument("reserved name: " + name);
    if (contains(name) && !open_) throw std::invalid_argument("duplicate variable: " + name);
    vars_.emplace_back(std::move(name), role);
}

bool VarCtx::contains(std::string_view name) const {
    for (auto& [n, r] : vars_)
        if (n == name) return true;
    return false;
}

Role VarCtx::role(std::string_view name) const {
    for (auto& [n, r] : vars_)
        if (n == name) return r;
    if (open_) return Role::auxiliary;
    throw std::out_of_range("undeclared variable: " + std::string(name));
}

}  // namespace jlq
