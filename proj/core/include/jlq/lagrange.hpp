#pragma once

#include "jlq/multiplier.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlq {

// L = l + dg/dt with the gauge g(t,q) kept symbolic; f1 and f3 are the
// coefficients fixed by the Euler-Lagrange constraint (l = L0 + f1 qd + f3).
struct Lagrangian {
    Expr l;
    Expr f1;
    Expr f3;
    Expr multiplier;
    std::string provenance;
};

class AnsatzInsufficient : public std::runtime_error {
public:
    AnsatzInsufficient(const std::string& what, Expr constraint)
        : std::runtime_error(what), constraint_(std::move(constraint)) {}
    const Expr& constraint() const { return constraint_; }

private:
    Expr constraint_;
};

// Functions t^a q^b, -bound <= a, b <= bound, optionally times log t and log q.
std::vector<Expr> gauge_ansatz(bool with_logs, int bound = 3);

// Throws UnsupportedIntegrand or AnsatzInsufficient.
Lagrangian lagrangian_from_multiplier(const Ode2& ode, const Multiplier& m, int gauge_bound = 3);

// Lagrangian from a user expression; the multiplier is its second qd derivative.
Lagrangian lagrangian_from_expr(const Expr& l, std::string provenance = "user");

// -Dt(dL/dqd) + dL/dq with qdd symbolic.
Expr euler_lagrange_residual(const Expr& l);
inline Expr euler_lagrange_residual(const Lagrangian& l, const Ode2&) { return euler_lagrange_residual(l.l); }

// True when residual + M (qdd - F) vanishes.
bool euler_lagrange_consistent(const Expr& l, const Ode2& ode);

// l1 - l2 = Dt(h) for some h(t,q).
bool gauge_equivalent(const Expr& l1, const Expr& l2);
inline bool gauge_equivalent(const Lagrangian& a, const Lagrangian& b) { return gauge_equivalent(a.l, b.l); }

// l1 is gauge equivalent to c*l2 for a nonzero constant c; returns c.
std::optional<GQ> gauge_equivalent_up_to_constant(const Expr& l1, const Expr& l2);

struct StraighteningCheck {
    bool ok = false;
    bool straightens = false;   // s1 -> d/dT, s2 -> d/dX
    bool target_matches = true; // only meaningful when a target was given
    Expr s1_t, s1_x, s2_t, s2_x;
    Expr transformed;  // d^2X/dT^2 expressed in (t, q, qd)
};

// New coordinates T(t,q), X(t,q). target_rhs, if given, is the claimed
// right-hand side d^2X/dT^2 = target(T, X, dX/dT) written in the variables
// t, q, qd standing for T, X, dX/dT. Throws std::invalid_argument for a
// degenerate Jacobian.
StraighteningCheck canonical_straightening_check(const PointSymmetry& s1, const PointSymmetry& s2, const Expr& tnew,
                                                 const Expr& xnew, const Ode2& ode,
                                                 const std::optional<Expr>& target_rhs = std::nullopt);

}  // namespace jlq
