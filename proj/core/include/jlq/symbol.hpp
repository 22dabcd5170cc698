#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace jlq {

class Expr;

// Interned variable handle. Log atoms are variables that carry their argument.
using Var = std::uint32_t;

Var sym(std::string_view name);
const std::string& sym_name(Var v);
bool is_log_atom(Var v);
// Argument of a log atom; throws for plain variables.
const Expr& log_argument(Var v);
// Interns log(arg) keyed by the printed canonical argument.
Var log_atom(const Expr& arg);

// Variable ranking used for canonical ordering: t, q, qd, qdd, x, psi, xi
// first, then other names alphabetically, then log atoms alphabetically.
// Returns <0 when a is more significant than b.
int rank_compare(Var a, Var b);

namespace vars {
Var t();
Var q();
Var qd();
Var qdd();
Var x();
Var psi();
Var xi();
}  // namespace vars

}  // namespace jlq
