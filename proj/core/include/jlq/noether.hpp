#pragma once

#include "jlq/lagrange.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jlq {

struct NoetherCertificate {
    PointSymmetry symmetry;
    Expr gauge;
    Expr integral;
};

struct NoetherResult {
    std::optional<NoetherCertificate> certificate;
    Expr unresolved;  // X1(L) + L Dt(V) when no gauge in the ansatz works
};

// X1(L) + L Dt(V) - Dt(g) = 0 solved for g in the gauge ansatz.
NoetherResult noether_test(const Lagrangian& l, const PointSymmetry& s, const Ode2& ode, int gauge_bound = 3);

// (qd V - G) dL/dqd - V L + g; throws std::logic_error if not conserved.
Expr first_integral(const NoetherCertificate& cert, const Lagrangian& l, const Ode2& ode);

struct SpectrumEntry {
    std::string lagrangian;
    std::vector<NoetherCertificate> certificates;  // basis of the Noether subalgebra
    bool physical_candidate = false;
};

// Noether subalgebra of the span of `syms` for each Lagrangian, as the reduced
// row echelon basis over the generator coefficients.
std::vector<SpectrumEntry> noether_spectrum(const std::vector<Lagrangian>& ls, const std::vector<PointSymmetry>& syms,
                                            const Ode2& ode, int gauge_bound = 3);

// "X4-X5", "G3-2/3*G7"
std::string combination_label(const std::vector<GQ>& c, const std::vector<PointSymmetry>& syms);

}  // namespace jlq
