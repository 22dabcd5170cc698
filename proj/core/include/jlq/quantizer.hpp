#pragma once

#include "jlq/pde.hpp"
#include "jlq/staged_solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlq {

struct QuantizeOptions {
    bool schrodinger_mode = false;
    int degree = 2;          // |a|, |b| <= degree for t^a x^b
    bool allow_log = false;  // lambda ansatz also carries log(t), log(x) multiples
    int max_depth = 3;
    // general mode: besides c_tt = 1, also try c_tt = 0, c_tx = 1 and c_tt = c_tx = 0, c_xx = 1
    bool principal_fallback = true;
};

// One solution family. Coefficients and lambdas depend on t, x and the free
// parameters a1, a2, ...; the PDE is normalized by its first principal
// coefficient (Schrodinger mode: c_t = 2i).
struct DeterminingBranch {
    LinearPde2 pde;
    std::vector<Expr> lams;
    std::vector<Var> free;
    std::vector<Expr> nonzero;
    std::vector<std::string> cases;
};

struct DeterminingResult {
    std::vector<DeterminingBranch> branches;
    std::vector<std::string> unresolved;
    std::size_t equations = 0;
    std::size_t unknowns = 0;
    int splits = 0;
};

// The lam field of the inputs is ignored; it is what gets solved for.
// Throws std::invalid_argument when a geometric part is not a Laurent polynomial in (t, x).
DeterminingResult solve_determining(const std::vector<PdeSymmetry>& geometric, const QuantizeOptions& opt);

struct Specialization {
    LinearPde2 pde;
    std::vector<Expr> lams;
    Bindings params;
};

// Member of the branch equal to `golden` up to overall scaling, with lambdas
// equal to golden_lams up to additive constants (psi d/dpsi). golden_lams may
// be empty.
std::optional<Specialization> branch_member(const DeterminingBranch& b, const LinearPde2& golden,
                                            const std::vector<Expr>& golden_lams = {});

// Deterministic member of a branch: the psi_t term is removed when the family
// allows it (general mode), then free parameters are set to the smallest of
// 0, 1, 2, ... compatible with the branch's nonzero conditions.
Specialization representative(const DeterminingBranch& b);

// Characteristic data and reduction of a parabolic equation.

class NonSeparable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// c_tt xi_t^2 + c_tx xi_t xi_x + c_xx xi_x^2 == 0
bool verify_characteristic(const LinearPde2& pde, const Expr& xi);

// Conserved quantity of dx/dt = c_tx/(2 c_tt) when the right-hand side
// separates as r(t) s(x). Throws NonSeparable, std::invalid_argument if not parabolic.
Expr characteristic_coordinate(const LinearPde2& pde);

// Coefficients of the equation in (xi, x) with psi(t, x) = phi(xi(t,x), x).
struct CharReduction {
    Expr xi;           // in (t, x)
    Expr phi_xx;       // reduced coefficients in (xi, x), cleared of denominators
    Expr phi_x;
    Expr phi;
    Expr phi_xi;       // nonzero blocks closed-form solving
    std::string str() const;  // "4*x^2*phi_xx + 12*x*phi_x + 3*phi = 0"
};

// Throws std::invalid_argument if xi is not characteristic or cannot be inverted for t.
CharReduction to_normal_form(const LinearPde2& pde, const Expr& xi);

struct EulerSolution {
    bool euler = false;   // a x^2 phi_xx + b x phi_x + c phi with a, b, c free of x
    bool closed = false;  // discriminant is a perfect square
    Expr a, b, c;
    std::vector<Expr> exponents;  // in xi
    bool repeated = false;        // basis x^r, x^r log(x)
    std::string basis() const;    // "alpha1(xi)*x^(-1/2) + alpha2(xi)*x^(-3/2)"
};

EulerSolution solve_euler(const CharReduction& red);

// Substitutes h(xi) x^r(xi) (and x^r log(x) h(xi) for a repeated root) with
// h = xi^k, k = 0, 1, 2, into the original equation, through the logarithmic
// derivative so that x^r never has to be formed.
bool back_substitution_check(const LinearPde2& pde, const CharReduction& red, const EulerSolution& sol);

}  // namespace jlq
