#pragma once

#include "jlq/expr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jlq {

enum class SolveStatus { unique, parametrized, inconsistent };

const char* status_name(SolveStatus s);

struct LinSolveResult {
    SolveStatus status = SolveStatus::unique;
    // Pivot unknowns in input order, expressed through the free unknowns.
    std::vector<std::pair<Var, Expr>> assignments;
    std::vector<Var> free;
    // For inconsistent systems: a reduced equation "witness = 0" with witness a nonzero constant
    // or an expression free of the unknowns.
    std::optional<Expr> witness;

    // Value of an unknown under the solution (free unknowns map to themselves).
    Expr value(Var u) const;
};

class NotLinear : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves eqs[k] = 0, each affine in `unknowns` with Expr coefficients.
LinSolveResult solve_linear(const std::vector<Expr>& eqs, const std::vector<Var>& unknowns);

// Sparse row over Q(i): (column, value) sorted by column.
using SparseRow = std::vector<std::pair<int, GQ>>;

struct Rref {
    std::vector<SparseRow> rows;  // one per pivot, normalized to pivot value 1
    std::vector<int> pivots;      // pivot column of each row
    bool inconsistent = false;    // a row reduced to 0 = nonzero (rhs column)
};

// Gauss-Jordan elimination of rows over columns [0, ncols); column `ncols`
// (if present) is an augmented right-hand side and never pivots.
Rref rref(std::vector<SparseRow> rows, int ncols);

// Basis of {v : A v = 0} from the RREF of A.
std::vector<std::vector<GQ>> nullspace(const Rref& r, int ncols);

// Square or overdetermined dense system A x = b over the Expr field; nullopt if
// singular or inconsistent.
std::optional<std::vector<Expr>> solve_dense(std::vector<std::vector<Expr>> a, std::vector<Expr> b);

}  // namespace jlq

namespace jlq {

// Conditions on constants c_j for sum_j c_j * e[j] to vanish identically in all
// variables (log atoms count as independent variables). Denominators are
// cleared with their least common multiple.
std::vector<SparseRow> identity_rows(const std::vector<Expr>& e);

// Constants c with sum_j c_j * columns[j] == target, componentwise; nullopt if none.
std::optional<std::vector<GQ>> constant_combination(const std::vector<std::vector<Expr>>& columns,
                                                    const std::vector<Expr>& target);

}  // namespace jlq
