#pragma once

#include "jlq/ode.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace jlq {

// c_tt psi_tt + c_tx psi_tx + c_xx psi_xx + c_t psi_t + c_x psi_x + c_0 psi = 0,
// coefficients in (t, x).
struct LinearPde2 {
    enum Slot { tt, tx, xx, t, x, zero };
    std::array<Expr, 6> c;
    bool schrodinger_mode = false;  // c_tt = c_tx = 0, c_t = 2i

    static const char* slot_name(int k);  // "psi_tt", ..., "psi"

    // Nonzero principal part check; throws std::invalid_argument.
    void validate() const;
    // Multiplies by the LCM of denominators and divides by the content, so
    // the coefficients are coprime polynomials with a positive leading
    // coefficient in the first nonzero slot.
    LinearPde2 cleared() const;
    // Divide by the first nonzero principal coefficient.
    LinearPde2 normalized() const;
    // "4*t^2*psi_tt + 8*t*x*psi_tx + ... = 0"
    std::string str() const;
};

// "c1*name1 + c2*name2 + ... = 0", zero terms skipped.
std::string linear_form(const std::vector<std::pair<Expr, std::string>>& terms);

// xi_t d/dt + xi_x d/dx + lam psi d/dpsi
struct PdeSymmetry {
    Expr xi_t;
    Expr xi_x;
    Expr lam;
    std::string label;
};

// Geometric part of a classical point symmetry with q identified with x.
PdeSymmetry lift(const PointSymmetry& s, std::string label = {});

// Coefficient of each psi-derivative in pr2(X)(Delta) before on-shell reduction.
std::array<Expr, 6> prolonged_coefficients(const std::array<Expr, 6>& c, const Expr& xi_t, const Expr& xi_x,
                                           const Expr& lam);

// Index of the derivative eliminated on shell: psi_t in Schrodinger mode,
// otherwise the first nonzero of psi_tt, psi_tx, psi_xx.
int pivot_slot(const LinearPde2& pde);

// Remaining coefficients after eliminating the pivot derivative with the PDE.
// All entries zero iff s is a symmetry. Throws std::invalid_argument if the
// pivot coefficient vanishes.
std::map<std::string, Expr> pde_symmetry_residual(const LinearPde2& pde, const PdeSymmetry& s);
bool is_pde_symmetry(const LinearPde2& pde, const PdeSymmetry& s);

enum class PdeClass { elliptic, parabolic, hyperbolic, degenerate_varying };
const char* class_name(PdeClass c);

Expr discriminant(const LinearPde2& pde);
PdeClass classify(const LinearPde2& pde);

// Apply the operator to a function of (t, x).
Expr apply_operator(const LinearPde2& pde, const Expr& f);

}  // namespace jlq
