#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jlq {

enum class Role { independent, dependent, jet, auxiliary };

const char* role_name(Role r);

// Declared variable names with their roles. Parsing checks identifiers against it.
class VarCtx {
public:
    VarCtx() = default;
    VarCtx(std::initializer_list<std::pair<std::string, Role>> vars);

    // t, q, qd, qdd
    static VarCtx ode();
    // t, x, psi, xi
    static VarCtx pde();
    // Accepts any identifier as an auxiliary variable.
    static VarCtx open();

    void add(std::string name, Role role);
    bool contains(std::string_view name) const;
    Role role(std::string_view name) const;
    bool is_open() const { return open_; }
    const std::vector<std::pair<std::string, Role>>& entries() const { return vars_; }

private:
    std::vector<std::pair<std::string, Role>> vars_;
    bool open_ = false;
};

}  // namespace jlq
