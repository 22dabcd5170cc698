#pragma once

#include "jlq/expr.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace jlq {

class NotPolynomial : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using CoeffMap = std::map<Monomial, Expr, RankLess>;

// e = sum over the map of coefficient * monomial, coefficients free of `vars`.
// Only nonzero coefficients are stored; absent monomials have coefficient 0.
CoeffMap collect_coefficients(const Expr& e, const std::vector<Var>& vars);

// Coefficient of a monomial in a CoeffMap (zero when absent).
Expr coefficient(const CoeffMap& m, const Monomial& mono);

}  // namespace jlq
