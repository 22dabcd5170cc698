#pragma once

#include "jlq/ode.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jlq {

struct Multiplier {
    Expr m;
    std::string provenance;  // "X1,X3" for a symmetry pair, "user" otherwise
};

struct PairResult {
    bool degenerate = false;
    Expr delta;
    std::optional<Multiplier> multiplier;  // empty when degenerate
};

// Determinant of [[1, qd, F], [V1, G1, eta1_1], [V2, G2, eta1_2]] and M = 1/det.
// Throws std::invalid_argument if either symmetry fails verification.
PairResult jlm_from_pair(const Ode2& ode, const PointSymmetry& s1, const PointSymmetry& s2);

struct MultiplierCheck {
    bool ok = false;
    Expr residual;  // Dt(M) + M dF/dqd
};

// Throws std::invalid_argument for m = 0.
MultiplierCheck verify_multiplier(const Ode2& ode, const Expr& m);

struct Ratio {
    Expr r;
    bool trivial = false;  // r is a constant
};

// m1/m2; throws std::logic_error if the ratio is not conserved on shell.
Ratio multiplier_ratio(const Multiplier& m1, const Multiplier& m2, const Ode2& ode);

struct SweepEntry {
    std::string s1, s2;
    bool degenerate = false;
    Expr m;
    // Earlier pair producing the same multiplier up to a constant factor, with m = factor * earlier.
    std::optional<std::size_t> duplicate_of;
    GQ factor{1};
};

// All pairs i < j in input order.
std::vector<SweepEntry> multiplier_sweep(const Ode2& ode, const std::vector<PointSymmetry>& syms);

// Entries of the sweep that are neither degenerate nor duplicates.
std::vector<Multiplier> distinct_multipliers(const std::vector<SweepEntry>& sweep);

}  // namespace jlq
