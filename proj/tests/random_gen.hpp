#pragma once

#include "support.hpp"

#include <random>

namespace jlq::test {

using ast::Kind;
using ast::Node;
using ast::NodePtr;

// Seeded source of random numbers, expression trees and gauge functions.
struct RandomGen {
    std::mt19937 rng{20240611};

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    GQ number() { return GQ(mpq_class(pick(-5, 5), pick(1, 4)), mpq_class(pick(0, 3) == 0 ? pick(-2, 2) : 0)); }

    NodePtr tree(int depth) {
        if (depth == 0 || pick(0, 3) == 0) {
            switch (pick(0, 3)) {
                case 0: return Node::number(number());
                case 1: return Node::var("t");
                case 2: return Node::var("q");
                default: return Node::var("qd");
            }
        }
        switch (pick(0, 5)) {
            case 0: return Node::binary(Kind::add, tree(depth - 1), tree(depth - 1));
            case 1: return Node::binary(Kind::sub, tree(depth - 1), tree(depth - 1));
            case 2: return Node::binary(Kind::mul, tree(depth - 1), tree(depth - 1));
            case 3: return Node::binary(Kind::div, tree(depth - 1), tree(depth - 1));
            case 4: return Node::power(tree(depth - 1), pick(-2, 3));
            default: return Node::neg(tree(depth - 1));
        }
    }

    Expr poly_tq() {
        Expr e;
        for (int k = 0; k < 3; ++k)
            e = e + Expr(GQ::frac(pick(-3, 3), pick(1, 2))) * P("t").pow(pick(0, 2)) * P("q").pow(pick(-1, 2));
        return e;
    }
};

}  // namespace jlq::test
