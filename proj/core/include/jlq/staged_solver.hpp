#pragma once

#include "jlq/expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace jlq {

// Polynomial system in parameter variables, solved by staged elimination:
// batched linear elimination, pivots on variables that occur linearly with a
// coefficient known to be nonzero, and bounded case splits otherwise.
struct StagedSystem {
    std::vector<Poly> equations;
    std::vector<Var> eliminate_first;  // pivot preference (e.g. symmetry parameters)
    std::vector<Var> others;
    std::vector<Var> principal;        // subset of others preferred for case splits
    std::vector<Poly> nonzero;         // assumed nonzero from the start
};

struct StagedBranch {
    std::map<Var, Expr> values;  // solved parameters in terms of the free ones
    std::vector<Var> free;       // parameters of the system left unconstrained
    std::vector<Poly> nonzero;   // conditions assumed along the branch
    std::vector<std::string> cases;
};

struct StagedResult {
    std::vector<StagedBranch> branches;
    // Systems left when no pivot was available or the split depth ran out.
    std::vector<std::vector<Poly>> unresolved;
    int splits = 0;
};

StagedResult solve_staged(const StagedSystem& sys, int max_depth = 3);

}  // namespace jlq
