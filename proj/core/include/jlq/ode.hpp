#pragma once

#include "jlq/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jlq {

// Second-order ODE qdd = rhs(t, q, qd).
struct Ode2 {
    Expr rhs;

    // Throws std::invalid_argument if rhs involves anything but t, q, qd.
    explicit Ode2(Expr f);
};

// V(t,q) d/dt + G(t,q) d/dq
struct PointSymmetry {
    Expr v;
    Expr g;
    std::string label;

    PointSymmetry() = default;
    PointSymmetry(Expr v_, Expr g_, std::string label_ = {});
};

struct ProlongedSymmetry {
    PointSymmetry base;
    Expr eta1;
    Expr eta2;  // contains qdd; q-double-dot is replaced only when verifying
};

struct SymmetryCheck {
    bool ok = false;
    Expr residual;
};

// Dt = d/dt + qd d/dq + F d/dqd
Expr total_derivative(const Expr& e, const Ode2& ode);
// d/dt + qd d/dq + qdd d/dqd, with qdd kept symbolic
Expr total_derivative_free(const Expr& e);

ProlongedSymmetry prolong(const PointSymmetry& s, const Ode2& ode);
SymmetryCheck verify_point_symmetry(const PointSymmetry& s, const Ode2& ode);

// Basis of polynomial symmetries with V, G of total degree <= degree_bound in (t, q).
std::vector<PointSymmetry> find_point_symmetries(const Ode2& ode, int degree_bound);

// Constants c with sum c_j basis_j = s, or nullopt.
std::optional<std::vector<GQ>> span_coordinates(const std::vector<PointSymmetry>& basis, const PointSymmetry& s);

// sum c_j s_j
PointSymmetry linear_combination(const std::vector<GQ>& c, const std::vector<PointSymmetry>& s, std::string label = {});

// Action of the vector field on a function of (t, q): V f_t + G f_q.
Expr apply_field(const PointSymmetry& s, const Expr& f);

}  // namespace jlq
