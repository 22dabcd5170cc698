#pragma once

#include "jlq/expr.hpp"

#include <stdexcept>
#include <string>

namespace jlq {

class UnsupportedIntegrand : public std::runtime_error {
public:
    UnsupportedIntegrand(const std::string& term, const std::string& why)
        : std::runtime_error("unsupported integrand term " + term + ": " + why), term_(term) {}
    const std::string& term() const { return term_; }

private:
    std::string term_;
};

// Antiderivative in v of sums of c*(a*v+b)^n (n any integer, a, b, c free of v)
// and of c*log(a*v+b). Log arguments produced by n = -1 are made monic.
// The result is verified by differentiation.
Expr integrate_power(const Expr& e, Var v);

}  // namespace jlq
